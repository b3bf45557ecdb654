#include "circus/compile.hpp"
#include "id_pool.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace circus {

CompiledDiagram bdd_to_circuit(const NBdd& d, std::size_t limit) {
  if (d.has_or_nodes()) throw Error(Errc::invalid_structure, "remove or-nodes before translating");
  if (d.semantics() != Semantics::standard)
    throw Error(Errc::semantics_mismatch, "translation expects standard semantics");
  validate(d);

  PreservationReport report;
  {
    std::vector<NodeIndex> witness;
    auto& in = report.input;
    in.free = is_free(d, &witness);
    auto order = ordered_witness(d);
    in.ordered = order.has_value();
    in.unambiguous = d.universe().size() <= limit ? is_unambiguous(d, limit) : std::nullopt;
    in.deterministic = is_deterministic(d);
    in.tree = is_forest(d) && d.sources().size() == 1;
    in.complete = is_complete(d);
  }

  detail::IdPool ids;
  for (const auto& n : d.nodes()) ids.reserve(n.id);
  Circuit c(d.universe());
  std::vector<std::optional<GateIndex>> gate(d.node_count());
  auto input_for = [&](NodeIndex u, NodeIndex v) {
    const BddNode& n = d.node(v);
    if (n.kind == NodeKind::sink) return c.add_const(ids.fresh("c_" + d.node(u).id), n.value);
    return *gate[v];
  };
  auto order = d.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeIndex u = *it;
    const BddNode& n = d.node(u);
    if (n.kind != NodeKind::variable) continue;
    GateIndex branch[2];
    for (int b = 0; b < 2; ++b) {
      std::vector<GateIndex> succ;
      for (const auto& e : d.out(u))
        if (e.label == label_of(b == 1)) succ.push_back(input_for(u, e.dst));
      branch[b] = succ.size() == 1 ? succ.front()
                                   : c.add_or(ids.fresh(std::string("o") + char('0' + b) + "_" + n.id), succ);
    }
    GateIndex pos = c.add_var(ids.fresh("x_" + n.id), n.var);
    GateIndex neg = c.add_neg(ids.fresh("nx_" + n.id), n.var);
    GateIndex a1 = c.add_and(ids.fresh("a1_" + n.id), {pos, branch[1]});
    GateIndex a0 = c.add_and(ids.fresh("a0_" + n.id), {neg, branch[0]});
    gate[u] = c.add_or(ids.fresh("g_" + n.id), {a1, a0});
  }
  std::vector<GateIndex> roots;
  for (NodeIndex s : d.sources()) {
    const BddNode& n = d.node(s);
    roots.push_back(n.kind == NodeKind::sink ? c.add_const(ids.fresh("c_" + n.id), n.value) : *gate[s]);
  }
  c.set_output(roots.size() == 1 ? roots.front() : c.add_or(ids.fresh("out"), roots));

  CompiledDiagram out{std::move(c), std::nullopt, report};
  const auto& in = report.input;
  auto& claims = out.report.claims;
  bool has_tests = std::any_of(d.nodes().begin(), d.nodes().end(),
                               [](const BddNode& n) { return n.kind == NodeKind::variable; });
  claims.decomposable = in.free;
  if (in.ordered && !d.universe().empty()) {
    std::vector<std::string> names;
    const auto witness = *ordered_witness(d);
    for (VarId v : witness) names.push_back(d.universe().name(v));
    out.vtree = right_linear(names);
    // a single-leaf v-tree has no internal node to host an and-gate
    claims.structured = d.universe().size() >= 2 || !has_tests;
  } else if (in.ordered) {
    claims.structured = !has_tests;
  }
  // unambiguity alone does not rule out two successors agreeing on an
  // assignment that no run completes; freeness does
  claims.deterministic = in.free && in.unambiguous.value_or(false);
  claims.decision = in.deterministic;
  claims.formula = in.tree;
  claims.smooth = in.free && in.complete;
  return out;
}

std::vector<std::string> position_variables(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  return names;
}

namespace {

std::pair<LetterIndex, LetterIndex> binary_letters(const Nfa& a) {
  auto zero = a.find_letter("0");
  auto one = a.find_letter("1");
  if (a.alphabet().size() != 2 || !zero || !one)
    throw Error(Errc::invalid_alphabet, "provenance needs the alphabet {0,1}; binarize first");
  return {*zero, *one};
}

}  // namespace

NBdd nfa_provenance(const Nfa& a, std::size_t n) {
  const auto [zero, one] = binary_letters(a);
  (void)zero;
  const Nfa c = nfa_complete(a);
  NBdd d(VarUniverse(position_variables(n)));
  const auto initial = c.initial_states();
  if (n == 0 || initial.empty()) {
    bool accept = n == 0 && std::any_of(initial.begin(), initial.end(), [&](StateIndex q) { return c.is_final(q); });
    d.add_sink(accept ? "t" : "f", accept);
    return d;
  }
  std::vector<std::vector<NfaTransition>> out(c.state_count());
  for (const auto& t : c.transitions()) out[t.from].push_back(t);

  // level i (1-based) holds g_{i,q} for the states reachable by words of length i-1
  std::vector<std::map<StateIndex, NodeIndex>> level(n + 2);
  auto node_id = [&](std::size_t i, StateIndex q) { return "g" + std::to_string(i) + "_" + c.states().name(q); };
  for (StateIndex q : initial) level[1].emplace(q, d.add_variable_node(node_id(1, q), VarId{0}));
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& [q, u] : level[i]) {
      for (const auto& t : out[q]) {
        auto it = level[i + 1].find(t.to);
        if (it == level[i + 1].end()) {
          NodeIndex v = i < n ? d.add_variable_node(node_id(i + 1, t.to), VarId{i})
                              : d.add_sink(node_id(i + 1, t.to), c.is_final(t.to));
          it = level[i + 1].emplace(t.to, v).first;
        }
        d.add_edge(u, label_of(t.letter == one), it->second);
      }
    }
  }
  return d;
}

TreeProvenance nfta_provenance(const Nfta& a, const TreeSkeleton& t) {
  t.validate_shape();
  const Nfta m = nfta_trim(a);
  const std::size_t q_count = m.state_count();

  VarUniverse u;
  for (const auto& node : t.nodes()) u.add(node.id);
  Circuit full(u);
  detail::IdPool ids;
  for (const auto& node : t.nodes()) ids.reserve(node.id);

  std::vector<std::optional<GateIndex>> pos(t.size()), neg(t.size());
  auto literal = [&](TreeIndex n, bool b) {
    auto& slot = b ? pos[n] : neg[n];
    if (!slot) {
      const std::string& name = t.node(n).id;
      slot = b ? full.add_var(ids.fresh("p_" + name), u.at(name)) : full.add_neg(ids.fresh("n_" + name), u.at(name));
    }
    return *slot;
  };

  // g[n][q] exists only when some run on the subtree of n ends in q
  std::vector<std::vector<std::optional<GateIndex>>> g(t.size(), std::vector<std::optional<GateIndex>>(q_count));
  for (TreeIndex n : t.postorder()) {
    const std::string& name = t.node(n).id;
    std::vector<std::vector<GateIndex>> inputs(q_count);
    if (t.is_leaf(n)) {
      for (const auto& i : m.inits()) inputs[i.to].push_back(literal(n, i.letter));
    } else {
      const TreeIndex l = t.left(n), r = t.right(n);
      std::map<std::pair<StateIndex, StateIndex>, GateIndex> children;
      for (const auto& tr : m.transitions()) {
        if (!g[l][tr.left] || !g[r][tr.right]) continue;
        auto key = std::make_pair(tr.left, tr.right);
        auto it = children.find(key);
        if (it == children.end())
          it = children.emplace(key, full.add_and(ids.fresh("k_" + name), {*g[l][tr.left], *g[r][tr.right]})).first;
        inputs[tr.to].push_back(full.add_and(ids.fresh("t_" + name), {literal(n, tr.letter), it->second}));
      }
    }
    for (StateIndex q = 0; q < q_count; ++q)
      if (!inputs[q].empty()) g[n][q] = full.add_or(ids.fresh("g_" + name + "_" + m.states().name(q)), inputs[q]);
  }
  std::vector<GateIndex> accepting;
  for (StateIndex q : m.final_states())
    if (g[t.root()][q]) accepting.push_back(*g[t.root()][q]);
  full.set_output(accepting.empty() ? full.add_const(ids.fresh("empty"), false)
                                    : full.add_or(ids.fresh("out"), accepting));

  // keep only gates with a path to the output
  std::vector<std::uint8_t> live(full.gate_count(), 0);
  std::vector<GateIndex> work{full.output()};
  live[full.output()] = 1;
  while (!work.empty()) {
    GateIndex x = work.back();
    work.pop_back();
    for (GateIndex y : full.gate(x).inputs)
      if (!live[y]) live[y] = 1, work.push_back(y);
  }
  Circuit c(u);
  std::vector<std::optional<GateIndex>> map(full.gate_count());
  for (GateIndex i : full.topological_order()) {
    if (!live[i]) continue;
    const Gate& gate = full.gate(i);
    switch (gate.kind) {
      case GateKind::const_true: map[i] = c.add_const(gate.id, true); break;
      case GateKind::const_false: map[i] = c.add_const(gate.id, false); break;
      case GateKind::var: map[i] = c.add_var(gate.id, gate.var); break;
      case GateKind::neg: map[i] = c.add_neg(gate.id, gate.var); break;
      case GateKind::conj:
      case GateKind::disj: {
        std::vector<GateIndex> in;
        for (GateIndex j : gate.inputs) in.push_back(*map[j]);
        map[i] = gate.kind == GateKind::conj ? c.add_and(gate.id, in) : c.add_or(gate.id, in);
        break;
      }
    }
  }
  c.set_output(*map[full.output()]);
  return {std::move(c), leaf_push(t), a.state_count() - q_count};
}

}  // namespace circus
