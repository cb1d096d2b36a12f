#include "wsrel/fsm_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "wsrel/errors.hpp"

namespace wsrel {

namespace {

bool edgeOrder(const Edge& a, const Edge& b) {
  if (a.from != b.from) return a.from < b.from;
  return a.to < b.to;
}

std::string edgeLabel(const Edge& e) { return e.from.name + "->" + e.to.name; }

std::string joinMessages(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "model failed validation";
  for (const auto& v : violations) out << "\n  [" << v.rule << "] " << v.message;
  return out.str();
}

}  // namespace

ReliabilityFsm::ReliabilityFsm(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId start)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), start_(std::move(start)) {
  std::sort(nodes_.begin(), nodes_.end());
  std::stable_sort(edges_.begin(), edges_.end(), edgeOrder);
}

bool ReliabilityFsm::hasNode(const NodeId& id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

std::span<const Edge> ReliabilityFsm::outgoing(const NodeId& from) const {
  auto lo = std::lower_bound(edges_.begin(), edges_.end(), from,
                             [](const Edge& e, const NodeId& id) { return e.from < id; });
  auto hi = std::upper_bound(lo, edges_.end(), from,
                             [](const NodeId& id, const Edge& e) { return id < e.from; });
  return {lo, hi};
}

std::vector<Violation> validate(const ReliabilityFsm& model) {
  std::vector<Violation> out;
  const auto& nodes = model.nodes();
  const auto& edges = model.edges();

  if (nodes.empty()) out.push_back({"no-nodes", "", "model has no transient nodes"});

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.name.empty()) out.push_back({"empty-label", "", "node label is empty"});
    if (isAbsorbing(n))
      out.push_back({"reserved-label", n.name,
                     fmt::format("label \"{}\" is reserved for an absorbing state", n.name)});
    if (i > 0 && nodes[i - 1] == n)
      out.push_back({"duplicate-node", n.name, fmt::format("duplicate node {}", n.name)});
  }

  if (!model.hasNode(model.start()))
    out.push_back({"start-not-node", model.start().name,
                   fmt::format("start node \"{}\" is not a transient node", model.start().name)});

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const auto label = edgeLabel(e);
    if (isAbsorbing(e.from))
      out.push_back({"edge-from-absorbing", label,
                     fmt::format("edge {} leaves absorbing state {}", label, e.from.name)});
    else if (!model.hasNode(e.from))
      out.push_back({"unknown-source", label,
                     fmt::format("edge {} starts at unknown node {}", label, e.from.name)});
    if (!isAbsorbing(e.to) && !model.hasNode(e.to))
      out.push_back({"unknown-target", label,
                     fmt::format("edge {} ends at unknown node {}", label, e.to.name)});
    if (!(e.probability >= 0.0 && e.probability <= 1.0))
      out.push_back({"probability-range", label,
                     fmt::format("edge {} probability {} outside [0,1]", label, e.probability)});
    if (i > 0 && edges[i - 1].from == e.from && edges[i - 1].to == e.to)
      out.push_back({"duplicate-edge", label, fmt::format("duplicate edge {}", label)});
  }

  for (const auto& n : nodes) {
    if (isAbsorbing(n)) continue;
    double sum = 0.0;
    for (const auto& e : model.outgoing(n)) sum += e.probability;
    if (!(std::abs(sum - 1.0) <= kStochasticTolerance))
      out.push_back({"row-sum", n.name,
                     fmt::format("row sum != 1 at {} (sum = {})", n.name, sum)});
  }

  // Backward search from C and F along positive-probability edges.
  std::set<NodeId> reaches;
  std::deque<NodeId> frontier{kCorrect, kFault};
  while (!frontier.empty()) {
    NodeId target = frontier.front();
    frontier.pop_front();
    for (const auto& e : edges) {
      if (e.to != target || !(e.probability > 0.0) || isAbsorbing(e.from)) continue;
      if (reaches.insert(e.from).second) frontier.push_back(e.from);
    }
  }
  for (const auto& n : nodes) {
    if (isAbsorbing(n) || reaches.contains(n)) continue;
    out.push_back({"no-absorbing-path", n.name,
                   fmt::format("no absorbing path from {}", n.name)});
  }
  return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(joinMessages(violations)), violations_(std::move(violations)) {}

void requireValid(const ReliabilityFsm& model) {
  auto violations = validate(model);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

double nodeFaultFactor(const ReliabilityFsm& model, const NodeId& node) {
  if (!model.hasNode(node)) throw UnknownNodeError("unknown node \"" + node.name + "\"");
  for (const auto& e : model.outgoing(node))
    if (e.to == kFault) return e.probability;
  return 0.0;
}

bool AbsorptionResult::isReliable() const {
  auto it = perNode.find(start);
  return it != perNode.end() && it->second.pCorrect > it->second.pFault;
}

}  // namespace wsrel
