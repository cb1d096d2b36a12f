#pragma once

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsrel {

/// Label of an FSM node. "C" and "F" are reserved for the absorbing
/// correct-output and fault states.
struct NodeId {
  std::string name;

  auto operator<=>(const NodeId&) const = default;
};

inline const NodeId kCorrect{"C"};
inline const NodeId kFault{"F"};

inline bool isAbsorbing(const NodeId& id) { return id == kCorrect || id == kFault; }

struct Edge {
  NodeId from;
  NodeId to;
  double probability = 0.0;

  bool operator==(const Edge&) const = default;
};

/// Absolute tolerance on the outgoing probability sum of a transient node.
inline constexpr double kStochasticTolerance = 1e-9;

/// Workflow model: transient nodes with probability-weighted edges into
/// each other and into the absorbing states C and F.
///
/// The constructor only canonicalizes (nodes sorted by label, edges sorted
/// by (from, to)); it does not reject malformed input so that `validate`
/// can report every breach. Immutable after construction.
class ReliabilityFsm {
 public:
  ReliabilityFsm() = default;
  ReliabilityFsm(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId start);

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const NodeId& start() const noexcept { return start_; }

  bool hasNode(const NodeId& id) const;

  /// Edges leaving `from`, in target order.
  std::span<const Edge> outgoing(const NodeId& from) const;

  bool operator==(const ReliabilityFsm&) const = default;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  NodeId start_;
};

struct Violation {
  std::string rule;     // machine-readable rule name, e.g. "row-sum"
  std::string subject;  // node label or "from->to"
  std::string message;
};

/// Every invariant breach of `model`; empty iff the model is a valid
/// absorbing chain.
std::vector<Violation> validate(const ReliabilityFsm& model);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws ValidationError when `validate` reports anything.
void requireValid(const ReliabilityFsm& model);

/// Probability on the edge n->F, i.e. the node's 1 - R_i. Zero when the
/// node has no fault edge. Throws UnknownNodeError for non-members.
double nodeFaultFactor(const ReliabilityFsm& model, const NodeId& node);

struct NodeAbsorption {
  double pCorrect = 0.0;
  double pFault = 0.0;
};

struct AbsorptionResult {
  std::map<NodeId, NodeAbsorption> perNode;
  NodeId start;
  double reliability = 0.0;  // pCorrect of the start node
  int iterations = 0;        // zero for the direct solve

  /// pCorrect(start) > pFault(start).
  bool isReliable() const;
};

}  // namespace wsrel
