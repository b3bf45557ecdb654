#pragma once

#include "circus/core.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace circus {

using NodeIndex = std::size_t;

enum class NodeKind : std::uint8_t { variable, sink, disjunction };
enum class Label : std::uint8_t { zero = 0, one = 1, epsilon = 2 };
enum class Semantics : std::uint8_t { standard, zero_suppressed };

inline Label label_of(bool bit) { return bit ? Label::one : Label::zero; }
char label_char(Label l);

struct BddNode {
  std::string id;
  NodeKind kind = NodeKind::sink;
  VarId var = 0;       // variable nodes
  bool value = false;  // sinks
};

struct BddEdge {
  NodeIndex src;
  Label label;
  NodeIndex dst;
};

struct OutEdge {
  Label label;
  NodeIndex dst;
};

/// Nondeterministic binary decision diagram: a labeled DAG whose internal
/// nodes test variables (or, when enabled, are unlabeled or-nodes). Sources are
/// the nodes without incoming edges; there may be several.
class NBdd {
 public:
  explicit NBdd(VarUniverse universe, Semantics semantics = Semantics::standard);

  NodeIndex add_variable_node(std::string id, VarId var);
  NodeIndex add_variable_node(std::string id, std::string_view var);
  NodeIndex add_sink(std::string id, bool value);
  /// Also turns on or-node support.
  NodeIndex add_or_node(std::string id);
  /// Returns false (and adds nothing) for a duplicate (src, label, dst).
  bool add_edge(NodeIndex src, Label label, NodeIndex dst);
  bool add_edge(std::string_view src, Label label, std::string_view dst);

  const VarUniverse& universe() const noexcept { return universe_; }
  Semantics semantics() const noexcept { return semantics_; }
  void set_semantics(Semantics s) noexcept { semantics_ = s; }
  bool or_nodes_allowed() const noexcept { return allow_or_; }
  void set_or_nodes_allowed(bool allow) noexcept { allow_or_ = allow; }
  bool has_or_nodes() const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Nodes plus edges.
  std::size_t size() const noexcept { return nodes_.size() + edges_.size(); }

  const BddNode& node(NodeIndex i) const { return nodes_.at(i); }
  const std::vector<BddNode>& nodes() const noexcept { return nodes_; }
  const std::vector<BddEdge>& edges() const noexcept { return edges_; }
  const std::vector<OutEdge>& out(NodeIndex i) const { return out_.at(i); }
  std::size_t in_degree(NodeIndex i) const { return in_degree_.at(i); }

  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws unknown_id.
  NodeIndex at(std::string_view id) const;

  std::vector<NodeIndex> sources() const;
  /// Kahn order, ties by insertion order. Throws cyclic_graph.
  std::vector<NodeIndex> topological_order() const;

 private:
  NodeIndex push_node(BddNode n);

  VarUniverse universe_;
  Semantics semantics_;
  bool allow_or_ = false;
  std::vector<BddNode> nodes_;
  std::vector<BddEdge> edges_;
  std::vector<std::vector<OutEdge>> out_;
  std::vector<std::size_t> in_degree_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::set<std::tuple<NodeIndex, Label, NodeIndex>> edge_set_;
};

/// Returns normally iff every structural invariant holds; otherwise throws
/// cyclic_graph, missing_branch, sink_with_out_edge, stray_epsilon or
/// invalid_structure.
void validate(const NBdd& d);

/// Existence of an accepting run following `a`, by forward reachability.
/// Zero-suppressed diagrams additionally require every 1-valued variable to be
/// tested on the run.
bool evaluate(const NBdd& d, const Assignment& a);

/// Number of accepting runs following `a`.
BigInt count_accepting_runs(const NBdd& d, const Assignment& a);

TruthTable diagram_table(const NBdd& d, std::size_t limit = kDefaultOracleLimit);

struct DiagramClassReport {
  bool free = false;
  /// When not free: a source-to-sink path repeating a variable.
  std::vector<NodeIndex> free_witness;
  bool ordered = false;
  /// When ordered: a total order on the universe every path respects.
  std::vector<VarId> order;
  /// Decided semantically; empty when the universe exceeds the oracle limit.
  std::optional<bool> unambiguous;
  bool deterministic = false;
  bool complete = false;
  bool forest = false;
  bool tree = false;
};

/// Throws invalid_structure when `d` has or-nodes.
DiagramClassReport classify(const NBdd& d, std::size_t limit = kDefaultOracleLimit);

bool is_free(const NBdd& d, std::vector<NodeIndex>* witness = nullptr);
std::optional<std::vector<VarId>> ordered_witness(const NBdd& d);
bool is_complete(const NBdd& d);
bool is_deterministic(const NBdd& d);
bool is_forest(const NBdd& d);
/// Empty when the universe exceeds `limit`.
std::optional<bool> is_unambiguous(const NBdd& d, std::size_t limit = kDefaultOracleLimit);

/// Routes every multi-target label through a fresh or-node and joins several
/// sources under one root or-node.
NBdd to_or_bdd(const NBdd& d);

/// Replaces or-nodes by direct edges to their or-closure.
NBdd from_or_bdd(const NBdd& d);

enum class CompletionMode { generic, free, ordered };

/// Inserts chains of fresh test nodes so that every run tests every variable.
/// Throws mode_precondition_violated when the mode's class requirement fails.
NBdd complete(const NBdd& d, CompletionMode mode);

/// Bottom-up model count on complete FBDDs. Throws not_complete, not_free or
/// not_deterministic.
BigInt count_models_complete_free(const NBdd& d);

enum class SemanticsConversion { zdd_to_standard, standard_to_zdd };

NBdd convert_semantics(const NBdd& d, SemanticsConversion direction);

/// Drops re-tests of variables already fixed on the unique path from the
/// source. Throws not_a_forest.
NBdd freeify_forest(const NBdd& d);

}  // namespace circus
