#include "wsrel/absorption.hpp"

#include <fmt/format.h>

namespace wsrel {

namespace {

AbsorptionResult collect(const ReliabilityFsm& model, const std::vector<NodeId>& order,
                         const ExitMatrix<double>& x, int iterations) {
  AbsorptionResult result;
  result.start = model.start();
  result.iterations = iterations;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    result.perNode.emplace(order[i], NodeAbsorption{x(row, 0), x(row, 1)});
  }
  if (auto it = result.perNode.find(model.start()); it != result.perNode.end())
    result.reliability = it->second.pCorrect;
  return result;
}

}  // namespace

AbsorptionResult solveAbsorption(const ReliabilityFsm& model, std::size_t denseCap) {
  if (model.nodes().size() > denseCap)
    throw DimensionOverflowError(fmt::format(
        "{} transient nodes exceed the dense-solve cap of {}; use the iterative solver",
        model.nodes().size(), denseCap));
  const auto sys = buildAbsorptionSystem<double>(model);
  const Eigen::MatrixXd dense(sys.transient);
  return collect(model, sys.order, solveAbsorbingSystem(dense, sys.exits), 0);
}

AbsorptionResult solveAbsorptionIterative(const ReliabilityFsm& model, std::size_t maxIter, double tol) {
  if (!(tol > 0.0)) throw DomainError("iteration tolerance must be positive");
  const auto sys = buildAbsorptionSystem<double>(model);
  int iterations = 0;
  auto x = iterateAbsorbingSystem(sys.transient, sys.exits, maxIter, tol, iterations);
  return collect(model, sys.order, x, iterations);
}

}  // namespace wsrel
