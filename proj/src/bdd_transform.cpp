#include "circus/bdd.hpp"
#include "id_pool.hpp"

#include <functional>
#include <map>

namespace circus {

namespace {

using detail::IdPool;

void require_plain(const NBdd& d, const char* what) {
  if (d.has_or_nodes())
    throw Error(Errc::invalid_structure, std::string(what) + " expects a diagram without or-nodes");
}

/// Copies every node of `d` (same ids, same indices) into a fresh diagram.
NBdd copy_nodes(const NBdd& d, IdPool& ids, bool keep_or = false) {
  NBdd out(d.universe(), d.semantics());
  for (const auto& n : d.nodes()) {
    ids.reserve(n.id);
    switch (n.kind) {
      case NodeKind::variable: out.add_variable_node(n.id, n.var); break;
      case NodeKind::sink: out.add_sink(n.id, n.value); break;
      case NodeKind::disjunction:
        if (!keep_or) throw Error(Errc::invalid_structure, "unexpected or-node");
        out.add_or_node(n.id);
        break;
    }
  }
  return out;
}

/// Builds chains of fresh test nodes. A zero-checking chain sends every
/// 1-edge to a shared false sink.
class ChainBuilder {
 public:
  ChainBuilder(NBdd& out, IdPool& ids, bool zero_check) : out_(out), ids_(ids), zero_check_(zero_check) {}

  NodeIndex build(const std::vector<VarId>& vars, NodeIndex target) {
    NodeIndex next = target;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      NodeIndex c = out_.add_variable_node(
          ids_.fresh(out_.node(target).id + "." + out_.universe().name(*it)), *it);
      out_.add_edge(c, Label::zero, next);
      out_.add_edge(c, Label::one, zero_check_ ? false_sink() : next);
      next = c;
    }
    return next;
  }

 private:
  NodeIndex false_sink() {
    if (!false_sink_) false_sink_ = out_.add_sink(ids_.fresh("zf"), false);
    return *false_sink_;
  }

  NBdd& out_;
  IdPool& ids_;
  bool zero_check_;
  std::optional<NodeIndex> false_sink_;
};

std::vector<VarId> all_vars(const VarUniverse& u) {
  std::vector<VarId> v(u.size());
  for (VarId i = 0; i < u.size(); ++i) v[i] = i;
  return v;
}

std::vector<VarId> members(const Bits& b) {
  std::vector<VarId> out;
  for (auto v = b.find_first(); v != Bits::npos; v = b.find_next(v)) out.push_back(v);
  return out;
}

struct Incoming {
  NodeIndex src;
  Label label;
};

std::vector<std::vector<Incoming>> incoming_edges(const NBdd& d) {
  std::vector<std::vector<Incoming>> in(d.node_count());
  for (const auto& e : d.edges()) in[e.dst].push_back({e.src, e.label});
  return in;
}

/// Each original edge src -> v, grouped by src, is rerouted through one chain
/// computed by `gap(src, v)`.
template <typename Gap>
void reroute_edges(const NBdd& d, NBdd& out, ChainBuilder& chains,
                   const std::vector<std::vector<Incoming>>& in, NodeIndex v, Gap gap) {
  std::map<NodeIndex, NodeIndex> head_for_src;
  for (const auto& e : in[v]) {
    auto it = head_for_src.find(e.src);
    if (it == head_for_src.end()) it = head_for_src.emplace(e.src, chains.build(gap(e.src), v)).first;
    out.add_edge(e.src, e.label, it->second);
  }
  (void)d;
}

NBdd complete_generic(const NBdd& d, bool zero_check) {
  IdPool ids;
  NBdd out = copy_nodes(d, ids);
  ChainBuilder chains(out, ids, zero_check);
  const auto vars = all_vars(d.universe());
  std::vector<std::optional<NodeIndex>> head(d.node_count());
  for (NodeIndex u = 0; u < d.node_count(); ++u)
    if (d.node(u).kind == NodeKind::sink) head[u] = chains.build(vars, u);
  for (const auto& e : d.edges()) out.add_edge(e.src, e.label, head[e.dst] ? *head[e.dst] : e.dst);
  return out;
}

// Every path reaching v ends up testing exactly tested[v]; chains fill in the
// variables a given predecessor has not seen yet.
NBdd complete_free(const NBdd& d, bool zero_check) {
  IdPool ids;
  NBdd out = copy_nodes(d, ids);
  ChainBuilder chains(out, ids, zero_check);
  const std::size_t n = d.universe().size();
  Bits everything(n);
  everything.set();
  const auto in = incoming_edges(d);
  std::vector<Bits> tested(d.node_count(), Bits(n));
  for (NodeIndex v : d.topological_order()) {
    const BddNode& node = d.node(v);
    if (in[v].empty()) {
      if (node.kind == NodeKind::sink) chains.build(all_vars(d.universe()), v);
      if (node.kind == NodeKind::variable) tested[v].set(node.var);
      continue;
    }
    Bits seen(n);
    for (const auto& e : in[v]) seen |= tested[e.src];
    const Bits& goal = node.kind == NodeKind::sink ? everything : seen;
    reroute_edges(d, out, chains, in, v, [&](NodeIndex src) { return members(goal - tested[src]); });
    tested[v] = seen;
    if (node.kind == NodeKind::variable) tested[v].set(node.var);
  }
  return out;
}

NBdd complete_ordered(const NBdd& d, const std::vector<VarId>& order, bool zero_check) {
  IdPool ids;
  NBdd out = copy_nodes(d, ids);
  ChainBuilder chains(out, ids, zero_check);
  const std::size_t k = order.size();
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[order[i]] = i;
  auto span = [&](std::size_t from, std::size_t to) {
    return std::vector<VarId>(order.begin() + static_cast<std::ptrdiff_t>(from),
                              order.begin() + static_cast<std::ptrdiff_t>(to));
  };
  const auto in = incoming_edges(d);
  for (NodeIndex v = 0; v < d.node_count(); ++v) {
    const BddNode& node = d.node(v);
    const std::size_t end = node.kind == NodeKind::sink ? k : pos[node.var];
    if (in[v].empty()) {
      chains.build(span(0, end), v);
      continue;
    }
    reroute_edges(d, out, chains, in, v, [&](NodeIndex src) { return span(pos[d.node(src).var] + 1, end); });
  }
  return out;
}

// Splits every node by the set of variables tested on the way to it; used for
// zero-suppressed diagrams that are not free.
NBdd expand_by_tested_set(const NBdd& d) {
  IdPool ids;
  for (const auto& n : d.nodes()) ids.reserve(n.id);
  NBdd out(d.universe(), Semantics::standard);
  ChainBuilder chains(out, ids, true);
  const std::size_t n = d.universe().size();
  std::map<std::pair<NodeIndex, Bits>, NodeIndex> made;
  std::map<NodeIndex, NodeIndex> sink_copy;
  std::function<NodeIndex(NodeIndex, const Bits&)> make = [&](NodeIndex u, const Bits& tested) {
    auto key = std::make_pair(u, tested);
    if (auto it = made.find(key); it != made.end()) return it->second;
    const BddNode& node = d.node(u);
    NodeIndex result;
    if (node.kind == NodeKind::sink) {
      auto it = sink_copy.find(u);
      if (it == sink_copy.end()) it = sink_copy.emplace(u, out.add_sink(node.id, node.value)).first;
      Bits everything(n);
      everything.set();
      result = chains.build(members(everything - tested), it->second);
    } else {
      result = out.add_variable_node(ids.fresh(node.id + (tested.none() ? "" : ".s")), node.var);
      Bits next = tested;
      next.set(node.var);
      for (const auto& e : d.out(u)) out.add_edge(result, e.label, make(e.dst, next));
    }
    made.emplace(std::move(key), result);
    return result;
  };
  for (NodeIndex s : d.sources()) make(s, Bits(n));
  return out;
}

}  // namespace

NBdd to_or_bdd(const NBdd& d) {
  require_plain(d, "to_or_bdd");
  if (d.semantics() != Semantics::standard)
    throw Error(Errc::semantics_mismatch, "or-nodes are only defined for standard semantics");
  IdPool ids;
  NBdd out = copy_nodes(d, ids);
  out.set_or_nodes_allowed(true);
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    for (Label b : {Label::zero, Label::one}) {
      std::vector<NodeIndex> targets;
      for (const auto& e : d.out(u))
        if (e.label == b) targets.push_back(e.dst);
      if (targets.size() == 1) {
        out.add_edge(u, b, targets.front());
      } else if (targets.size() > 1) {
        NodeIndex o = out.add_or_node(ids.fresh("or_" + d.node(u).id + "_" + label_char(b)));
        out.add_edge(u, b, o);
        for (NodeIndex t : targets) out.add_edge(o, Label::epsilon, t);
      }
    }
  }
  auto sources = d.sources();
  if (sources.size() > 1) {
    NodeIndex root = out.add_or_node(ids.fresh("or_root"));
    for (NodeIndex s : sources) out.add_edge(root, Label::epsilon, s);
  }
  return out;
}

NBdd from_or_bdd(const NBdd& d) {
  IdPool ids;
  NBdd out(d.universe(), d.semantics());
  std::vector<std::optional<NodeIndex>> map(d.node_count());
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    const BddNode& n = d.node(u);
    ids.reserve(n.id);
    if (n.kind == NodeKind::variable) map[u] = out.add_variable_node(n.id, n.var);
    else if (n.kind == NodeKind::sink) map[u] = out.add_sink(n.id, n.value);
  }
  // closure[o]: non-or nodes reachable from or-node o through or-nodes only
  auto order = d.topological_order();
  std::vector<std::vector<NodeIndex>> closure(d.node_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (d.node(*it).kind != NodeKind::disjunction) continue;
    std::set<NodeIndex> acc;
    for (const auto& e : d.out(*it)) {
      if (d.node(e.dst).kind == NodeKind::disjunction) acc.insert(closure[e.dst].begin(), closure[e.dst].end());
      else acc.insert(e.dst);
    }
    closure[*it].assign(acc.begin(), acc.end());
  }
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    if (d.node(u).kind != NodeKind::variable) continue;
    for (const auto& e : d.out(u)) {
      if (d.node(e.dst).kind == NodeKind::disjunction) {
        for (NodeIndex v : closure[e.dst]) out.add_edge(*map[u], e.label, *map[v]);
      } else {
        out.add_edge(*map[u], e.label, *map[e.dst]);
      }
    }
  }
  // Targets of an or-source must become sources; a target that already has
  // incoming edges is duplicated instead.
  std::set<NodeIndex> start_targets;
  for (NodeIndex s : d.sources())
    if (d.node(s).kind == NodeKind::disjunction) start_targets.insert(closure[s].begin(), closure[s].end());
  std::vector<NodeIndex> to_duplicate;
  for (NodeIndex v : start_targets)
    if (out.in_degree(*map[v]) > 0) to_duplicate.push_back(v);
  for (NodeIndex v : to_duplicate) {
    const BddNode& n = d.node(v);
    NodeIndex mv = *map[v];
    NodeIndex copy = n.kind == NodeKind::sink ? out.add_sink(ids.fresh(n.id + ".src"), n.value)
                                              : out.add_variable_node(ids.fresh(n.id + ".src"), n.var);
    std::vector<OutEdge> edges = out.out(mv);
    for (const auto& e : edges) out.add_edge(copy, e.label, e.dst);
  }
  return out;
}

NBdd complete(const NBdd& d, CompletionMode mode) {
  require_plain(d, "complete");
  if (d.semantics() != Semantics::standard)
    throw Error(Errc::semantics_mismatch, "completion expects standard semantics");
  switch (mode) {
    case CompletionMode::generic:
      return complete_generic(d, false);
    case CompletionMode::free:
      if (!is_free(d)) throw Error(Errc::mode_precondition_violated, "free completion needs a free diagram");
      return complete_free(d, false);
    case CompletionMode::ordered: {
      auto order = ordered_witness(d);
      if (!order) throw Error(Errc::mode_precondition_violated, "ordered completion needs an ordered diagram");
      return complete_ordered(d, *order, false);
    }
  }
  return complete_generic(d, false);
}

BigInt count_models_complete_free(const NBdd& d) {
  require_plain(d, "count_models_complete_free");
  if (!is_complete(d)) throw Error(Errc::not_complete, "diagram is not complete");
  if (!is_free(d)) throw Error(Errc::not_free, "diagram is not free");
  if (!is_deterministic(d)) throw Error(Errc::not_deterministic, "diagram is not deterministic");
  auto order = d.topological_order();
  std::vector<BigInt> count(d.node_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BddNode& n = d.node(*it);
    if (n.kind == NodeKind::sink) {
      count[*it] = n.value ? 1 : 0;
      continue;
    }
    for (const auto& e : d.out(*it)) count[*it] += count[e.dst];
  }
  BigInt total = 0;
  for (NodeIndex s : d.sources()) total += count[s];
  return total;
}

NBdd convert_semantics(const NBdd& d, SemanticsConversion direction) {
  require_plain(d, "convert_semantics");
  if (direction == SemanticsConversion::zdd_to_standard) {
    if (d.semantics() != Semantics::zero_suppressed)
      throw Error(Errc::semantics_mismatch, "expected a zero-suppressed diagram");
    NBdd out = [&] {
      if (auto order = ordered_witness(d)) return complete_ordered(d, *order, true);
      if (is_free(d)) return complete_free(d, true);
      return expand_by_tested_set(d);
    }();
    out.set_semantics(Semantics::standard);
    return out;
  }
  if (d.semantics() != Semantics::standard)
    throw Error(Errc::semantics_mismatch, "expected a diagram with standard semantics");
  NBdd out = [&] {
    if (ordered_witness(d)) return complete(d, CompletionMode::ordered);
    if (is_free(d)) return complete(d, CompletionMode::free);
    return complete(d, CompletionMode::generic);
  }();
  out.set_semantics(Semantics::zero_suppressed);
  return out;
}

NBdd freeify_forest(const NBdd& d) {
  require_plain(d, "freeify_forest");
  if (!is_forest(d)) throw Error(Errc::not_a_forest, "diagram is not a decision forest");
  NBdd out(d.universe(), d.semantics());
  std::vector<std::optional<NodeIndex>> sink_copy(d.node_count());
  // partial[v]: -1 unknown, else the value fixed on the path so far
  std::function<std::vector<NodeIndex>(NodeIndex, std::vector<int>&)> build =
      [&](NodeIndex u, std::vector<int>& partial) -> std::vector<NodeIndex> {
    const BddNode& node = d.node(u);
    if (node.kind == NodeKind::sink) {
      if (!sink_copy[u]) sink_copy[u] = out.add_sink(node.id, node.value);
      return {*sink_copy[u]};
    }
    if (partial[node.var] >= 0) {
      std::vector<NodeIndex> targets;
      const Label forced = label_of(partial[node.var] == 1);
      for (const auto& e : d.out(u)) {
        if (e.label != forced) continue;
        auto sub = build(e.dst, partial);
        targets.insert(targets.end(), sub.begin(), sub.end());
      }
      return targets;
    }
    NodeIndex self = out.add_variable_node(node.id, node.var);
    for (const auto& e : d.out(u)) {
      partial[node.var] = e.label == Label::one ? 1 : 0;
      for (NodeIndex t : build(e.dst, partial)) out.add_edge(self, e.label, t);
    }
    partial[node.var] = -1;
    return {self};
  };
  for (NodeIndex s : d.sources()) {
    std::vector<int> partial(d.universe().size(), -1);
    build(s, partial);
  }
  return out;
}

}  // namespace circus
