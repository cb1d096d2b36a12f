#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "wsrel/errors.hpp"
#include "wsrel/fsm_model.hpp"

namespace wsrel {

/// Largest transient-node count accepted by the dense direct solve.
inline constexpr std::size_t kDenseSolveCap = 2000;

template <typename Scalar>
using ExitMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

/// Direct solve of X = Q X + B for the absorption probabilities, i.e.
/// (I - Q) X = B by LU with partial pivoting. Column 0 of B holds the
/// one-step probabilities into C, column 1 into F.
template <typename DerivedQ, typename DerivedB>
ExitMatrix<typename DerivedQ::Scalar> solveAbsorbingSystem(const Eigen::MatrixBase<DerivedQ>& transient,
                                                          const Eigen::MatrixBase<DerivedB>& exits) {
  using Scalar = typename DerivedQ::Scalar;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = transient.rows();
  Dense system = Dense::Identity(n, n) - transient;
  Eigen::PartialPivLU<Dense> lu(system);

  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const Scalar threshold =
      std::numeric_limits<Scalar>::epsilon() * static_cast<Scalar>(n) * system.cwiseAbs().maxCoeff();
  if (n > 0 && !(pivots.minCoeff() > threshold))
    throw SingularSystemError("absorption system I - Q is singular");

  ExitMatrix<Scalar> x = lu.solve(exits.derived());
  if (!x.allFinite()) throw SingularSystemError("absorption solve produced non-finite values");
  return x.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
}

/// Fixed-point iteration X <- Q X + B from X = 0. Alongside the iterates
/// it tracks the unabsorbed mass U_k = Q^k 1. For a substochastic Q both
/// the remaining error X* - X_k and every later step X_{j+1} - X_j are
/// bounded by U_k, so the loop stops at the first sweep with
/// max(U_k) < tol; `iterations` receives that sweep count. Throws NonConvergenceError when
/// `maxIter` sweeps are not enough. Works for dense and sparse Q.
template <typename MatrixQ, typename DerivedB>
ExitMatrix<typename DerivedB::Scalar> iterateAbsorbingSystem(const MatrixQ& transient,
                                                            const Eigen::MatrixBase<DerivedB>& exits,
                                                            std::size_t maxIter,
                                                            typename DerivedB::Scalar tol,
                                                            int& iterations) {
  using Scalar = typename DerivedB::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  ExitMatrix<Scalar> x = ExitMatrix<Scalar>::Zero(exits.rows(), 2);
  Vector unabsorbed = Vector::Ones(exits.rows());
  for (std::size_t sweep = 1; sweep <= maxIter; ++sweep) {
    ExitMatrix<Scalar> next = transient * x + exits.derived();
    unabsorbed = transient * unabsorbed;
    const Scalar remaining = x.rows() == 0 ? Scalar(0) : unabsorbed.maxCoeff();
    x = std::move(next);
    if (remaining < tol) {
      iterations = static_cast<int>(sweep);
      return x;
    }
  }
  throw NonConvergenceError("fixed-point iteration did not converge within " +
                            std::to_string(maxIter) + " iterations");
}

/// Q and [b_C b_F] of a model, with rows in sorted node-label order.
template <typename Scalar>
struct AbsorptionSystem {
  std::vector<NodeId> order;
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> transient;
  ExitMatrix<Scalar> exits;
};

template <typename Scalar = double>
AbsorptionSystem<Scalar> buildAbsorptionSystem(const ReliabilityFsm& model) {
  AbsorptionSystem<Scalar> sys;
  sys.order = model.nodes();
  const auto n = static_cast<Eigen::Index>(sys.order.size());
  auto indexOf = [&](const NodeId& id) {
    auto it = std::lower_bound(sys.order.begin(), sys.order.end(), id);
    return static_cast<Eigen::Index>(it - sys.order.begin());
  };

  std::vector<Eigen::Triplet<Scalar>> entries;
  sys.exits = ExitMatrix<Scalar>::Zero(n, 2);
  for (const auto& e : model.edges()) {
    const auto row = indexOf(e.from);
    const auto p = static_cast<Scalar>(e.probability);
    if (e.to == kCorrect)
      sys.exits(row, 0) += p;
    else if (e.to == kFault)
      sys.exits(row, 1) += p;
    else
      entries.emplace_back(row, indexOf(e.to), p);
  }
  sys.transient.resize(n, n);
  sys.transient.setFromTriplets(entries.begin(), entries.end());
  return sys;
}

/// Exact absorption probabilities for every transient node of a validated
/// model. Throws DimensionOverflowError above `denseCap` nodes.
AbsorptionResult solveAbsorption(const ReliabilityFsm& model, std::size_t denseCap = kDenseSolveCap);

/// Same quantity by fixed-point iteration; no node-count cap.
AbsorptionResult solveAbsorptionIterative(const ReliabilityFsm& model, std::size_t maxIter, double tol);

}  // namespace wsrel
