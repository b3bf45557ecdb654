#include "circus/circuit.hpp"
#include "id_pool.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>
#include <set>

namespace circus {

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::const_true: return "true";
    case GateKind::const_false: return "false";
    case GateKind::var: return "var";
    case GateKind::neg: return "neg";
    case GateKind::conj: return "and";
    case GateKind::disj: return "or";
  }
  return "?";
}

Circuit::Circuit(VarUniverse universe) : universe_(std::move(universe)) {}

GateIndex Circuit::push(Gate g) {
  if (index_.count(g.id) != 0) throw Error(Errc::duplicate_id, g.id);
  GateIndex i = gates_.size();
  index_.emplace(g.id, i);
  gates_.push_back(std::move(g));
  return i;
}

GateIndex Circuit::add_const(std::string id, bool value) {
  return push({std::move(id), value ? GateKind::const_true : GateKind::const_false, 0, {}});
}

GateIndex Circuit::add_var(std::string id, VarId v) {
  if (v >= universe_.size()) throw Error(Errc::unknown_variable, "variable index out of range");
  return push({std::move(id), GateKind::var, v, {}});
}

GateIndex Circuit::add_neg(std::string id, VarId v) {
  if (v >= universe_.size()) throw Error(Errc::unknown_variable, "variable index out of range");
  return push({std::move(id), GateKind::neg, v, {}});
}

GateIndex Circuit::add_and(std::string id, std::vector<GateIndex> inputs) {
  GateIndex g = push({std::move(id), GateKind::conj, 0, {}});
  set_inputs(g, std::move(inputs));
  return g;
}

GateIndex Circuit::add_or(std::string id, std::vector<GateIndex> inputs) {
  GateIndex g = push({std::move(id), GateKind::disj, 0, {}});
  set_inputs(g, std::move(inputs));
  return g;
}

void Circuit::set_inputs(GateIndex g, std::vector<GateIndex> inputs) {
  Gate& gate = gates_.at(g);
  if (!inputs.empty() && gate.kind != GateKind::conj && gate.kind != GateKind::disj)
    throw Error(Errc::invalid_structure, "gate '" + gate.id + "' takes no inputs");
  for (GateIndex i : inputs)
    if (i >= gates_.size()) throw Error(Errc::unknown_id, "input gate index out of range");
  gate.inputs = std::move(inputs);
}

void Circuit::set_output(GateIndex g) {
  if (g >= gates_.size()) throw Error(Errc::unknown_id, "output gate index out of range");
  output_ = g;
}

std::size_t Circuit::wire_count() const {
  std::size_t w = 0;
  for (const auto& g : gates_) w += g.inputs.size();
  return w;
}

GateIndex Circuit::output() const {
  if (!output_) throw Error(Errc::invalid_structure, "circuit has no output gate");
  return *output_;
}

std::optional<GateIndex> Circuit::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GateIndex Circuit::at(std::string_view id) const {
  if (auto g = find(id)) return *g;
  throw Error(Errc::unknown_id, std::string(id));
}

std::vector<GateIndex> Circuit::topological_order() const {
  // iterative DFS; state 1 = on stack, 2 = done
  std::vector<std::uint8_t> state(gates_.size(), 0);
  std::vector<GateIndex> order;
  order.reserve(gates_.size());
  for (GateIndex start = 0; start < gates_.size(); ++start) {
    if (state[start] != 0) continue;
    std::vector<std::pair<GateIndex, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [g, next] = stack.back();
      if (next < gates_[g].inputs.size()) {
        GateIndex in = gates_[g].inputs[next++];
        if (state[in] == 1) throw Error(Errc::cyclic_graph, "cycle through gate '" + gates_[in].id + "'");
        if (state[in] == 0) {
          state[in] = 1;
          stack.push_back({in, 0});
        }
        continue;
      }
      state[g] = 2;
      order.push_back(g);
      stack.pop_back();
    }
  }
  return order;
}

void validate(const Circuit& c) {
  c.output();
  c.topological_order();
  for (const auto& g : c.gates()) {
    if ((g.kind == GateKind::conj || g.kind == GateKind::disj) && g.inputs.empty())
      throw Error(Errc::invalid_structure, "gate '" + g.id + "' has no inputs");
  }
}

bool evaluate_circuit(const Circuit& c, const Assignment& a) {
  if (a.size() != c.universe().size()) throw Error(Errc::universe_mismatch, "assignment size differs from universe");
  std::vector<std::uint8_t> value(c.gate_count(), 0);
  for (GateIndex i : c.topological_order()) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::const_true: value[i] = 1; break;
      case GateKind::const_false: value[i] = 0; break;
      case GateKind::var: value[i] = a[g.var]; break;
      case GateKind::neg: value[i] = !a[g.var]; break;
      case GateKind::conj:
        value[i] = std::all_of(g.inputs.begin(), g.inputs.end(), [&](GateIndex j) { return value[j] != 0; });
        break;
      case GateKind::disj:
        value[i] = std::any_of(g.inputs.begin(), g.inputs.end(), [&](GateIndex j) { return value[j] != 0; });
        break;
    }
  }
  return value[c.output()] != 0;
}

std::vector<Bits> gate_tables(const Circuit& c, std::size_t limit) {
  require_within_limit(c.universe(), limit);
  const std::size_t n = c.universe().size();
  const std::size_t rows = std::size_t{1} << n;
  std::vector<Bits> t(c.gate_count());
  for (GateIndex i : c.topological_order()) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::const_true: t[i] = Bits(rows); t[i].set(); break;
      case GateKind::const_false: t[i] = Bits(rows); break;
      case GateKind::var: t[i] = projection_bits(n, g.var); break;
      case GateKind::neg: t[i] = ~projection_bits(n, g.var); break;
      case GateKind::conj:
        t[i] = Bits(rows);
        t[i].set();
        for (GateIndex j : g.inputs) t[i] &= t[j];
        break;
      case GateKind::disj:
        t[i] = Bits(rows);
        for (GateIndex j : g.inputs) t[i] |= t[j];
        break;
    }
  }
  return t;
}

TruthTable circuit_table(const Circuit& c, std::size_t limit) {
  auto t = gate_tables(c, limit);
  return TruthTable(c.universe(), std::move(t[c.output()]));
}

std::vector<Bits> gate_vars(const Circuit& c) {
  const std::size_t n = c.universe().size();
  std::vector<Bits> vars(c.gate_count(), Bits(n));
  for (GateIndex i : c.topological_order()) {
    const Gate& g = c.gate(i);
    if (g.kind == GateKind::var || g.kind == GateKind::neg) vars[i].set(g.var);
    for (GateIndex j : g.inputs) vars[i] |= vars[j];
  }
  return vars;
}

namespace {

bool decomposable_with(const Circuit& c, const std::vector<Bits>& vars) {
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::conj) continue;
    if (g.inputs.size() != 2 || g.inputs[0] == g.inputs[1]) return false;
    if (vars[g.inputs[0]].intersects(vars[g.inputs[1]])) return false;
  }
  return true;
}

bool smooth_with(const Circuit& c, const std::vector<Bits>& vars) {
  for (GateIndex i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gate(i);
    if (g.kind != GateKind::disj) continue;
    for (GateIndex j : g.inputs)
      if (vars[j] != vars[i]) return false;
  }
  return true;
}

bool has_literal_input(const Circuit& c, const Gate& and_gate, GateKind kind, VarId v) {
  return std::any_of(and_gate.inputs.begin(), and_gate.inputs.end(), [&](GateIndex j) {
    return c.gate(j).kind == kind && c.gate(j).var == v;
  });
}

bool decision_gate(const Circuit& c, const Gate& g) {
  if (g.inputs.size() != 2) return false;
  const Gate& a = c.gate(g.inputs[0]);
  const Gate& b = c.gate(g.inputs[1]);
  if (a.kind != GateKind::conj || b.kind != GateKind::conj) return false;
  for (const Gate* pos : {&a, &b}) {
    const Gate* other = pos == &a ? &b : &a;
    for (GateIndex j : pos->inputs) {
      const Gate& lit = c.gate(j);
      if (lit.kind == GateKind::var && has_literal_input(c, *other, GateKind::neg, lit.var)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_decomposable(const Circuit& c) { return decomposable_with(c, gate_vars(c)); }

bool is_smooth(const Circuit& c) { return smooth_with(c, gate_vars(c)); }

CircuitClassReport classify_syntactic(const Circuit& c) {
  CircuitClassReport r;
  const auto vars = gate_vars(c);
  r.decomposable = decomposable_with(c, vars);
  r.smooth = smooth_with(c, vars);
  r.decision = true;
  std::vector<std::size_t> fanout(c.gate_count(), 0);
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::disj && !decision_gate(c, g)) r.decision = false;
    for (GateIndex j : g.inputs) ++fanout[j];
  }
  r.formula = std::all_of(fanout.begin(), fanout.end(), [](std::size_t f) { return f <= 1; }) &&
              fanout[c.output()] == 0;
  std::vector<std::size_t> literal_gates(c.universe().size(), 0);
  for (const auto& g : c.gates())
    if (g.kind == GateKind::var || g.kind == GateKind::neg) ++literal_gates[g.var];
  r.read_once = r.formula && std::all_of(literal_gates.begin(), literal_gates.end(),
                                         [](std::size_t k) { return k <= 1; });
  return r;
}

namespace {

struct VTreeView {
  const VTree& tree;
  std::vector<Bits> vars;
  std::vector<TreeIndex> leaf_for;  // by VarId
};

VTreeView make_view(const Circuit& c, const VTree& t) {
  validate_vtree(t, c.universe());
  VTreeView v{t, t.node_vars(c.universe()), std::vector<TreeIndex>(c.universe().size())};
  for (TreeIndex i = 0; i < t.size(); ++i)
    if (t.is_leaf(i)) v.leaf_for[c.universe().at(t.var(i))] = i;
  return v;
}

/// Which input (0 or 1) goes under the left child of n, if the split fits.
std::optional<std::size_t> prime_side(const VTreeView& v, TreeIndex n, const Bits& a, const Bits& b) {
  if (v.tree.is_leaf(n)) return std::nullopt;
  const Bits& l = v.vars[v.tree.left(n)];
  const Bits& r = v.vars[v.tree.right(n)];
  if (a.is_subset_of(l) && b.is_subset_of(r)) return 0;
  if (b.is_subset_of(l) && a.is_subset_of(r)) return 1;
  return std::nullopt;
}

/// Every admissible node for an and-gate, lowest first.
std::vector<std::pair<TreeIndex, std::size_t>> admissible_nodes(const VTreeView& v, const Bits& a, const Bits& b) {
  std::vector<std::pair<TreeIndex, std::size_t>> out;
  Bits both = a | b;
  std::optional<TreeIndex> n;
  if (both.none()) {
    n = v.tree.root();
  } else {
    for (auto x = both.find_first(); x != Bits::npos; x = both.find_next(x))
      n = n ? v.tree.lca(*n, v.leaf_for[x]) : v.leaf_for[x];
  }
  if (both.none()) {
    // no variables below: any internal node fits, with the first input as prime
    for (TreeIndex i : v.tree.postorder())
      if (!v.tree.is_leaf(i)) out.emplace_back(i, 0);
    return out;
  }
  for (std::optional<TreeIndex> m = n; m; m = v.tree.parent(*m))
    if (auto side = prime_side(v, *m, a, b)) out.emplace_back(*m, *side);
  return out;
}

}  // namespace

StructureResult check_structured(const Circuit& c, const VTree& t) {
  const auto vars = gate_vars(c);
  if (!decomposable_with(c, vars)) throw Error(Errc::not_decomposable, "structuredness needs a decomposable circuit");
  const VTreeView view = make_view(c, t);
  StructureResult result;
  for (GateIndex i : c.topological_order()) {
    const Gate& g = c.gate(i);
    if (g.kind != GateKind::conj) continue;
    const Bits& a = vars[g.inputs[0]];
    const Bits& b = vars[g.inputs[1]];
    std::optional<TreeIndex> chosen;
    if ((a | b).none()) {
      if (!t.is_leaf(t.root())) chosen = t.root();
    } else {
      auto nodes = admissible_nodes(view, a, b);
      if (!nodes.empty()) chosen = nodes.front().first;
    }
    if (!chosen) {
      result.witness = i;
      result.rho.clear();
      return result;
    }
    result.rho[i] = *chosen;
  }
  result.ok = true;
  return result;
}

bool check_deterministic(const Circuit& c, std::size_t limit) {
  const auto tables = gate_tables(c, limit);
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::disj) continue;
    for (std::size_t i = 0; i < g.inputs.size(); ++i)
      for (std::size_t j = i + 1; j < g.inputs.size(); ++j)
        if (g.inputs[i] != g.inputs[j] && tables[g.inputs[i]].intersects(tables[g.inputs[j]])) return false;
  }
  return true;
}

// The and-gates feeding or-gates must agree on one v-tree node per or-gate,
// and an and-gate shared by several or-gates ties their choices together, so
// or-gates are grouped by shared inputs and each group searched as a whole.
StrongDeterminism check_strong_det_and_sdd(const Circuit& c, const VTree& t, std::size_t limit) {
  auto structured = check_structured(c, t);
  if (!structured.ok) throw Error(Errc::not_structured, "circuit is not structured by the v-tree");
  const auto vars = gate_vars(c);
  const auto tables = gate_tables(c, limit);
  const VTreeView view = make_view(c, t);

  std::vector<GateIndex> ors;
  for (GateIndex i = 0; i < c.gate_count(); ++i)
    if (c.gate(i).kind == GateKind::disj) ors.push_back(i);

  StrongDeterminism out{true, true};
  for (GateIndex o : ors) {
    for (GateIndex j : c.gate(o).inputs)
      if (c.gate(j).kind != GateKind::conj) return {false, false};
  }

  // union-find over or-gates sharing an and-input
  std::vector<std::size_t> parent(ors.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::map<GateIndex, std::size_t> owner;
  for (std::size_t k = 0; k < ors.size(); ++k) {
    for (GateIndex j : c.gate(ors[k]).inputs) {
      auto [it, fresh] = owner.emplace(j, k);
      if (!fresh) parent[root(k)] = root(it->second);
    }
  }
  std::map<std::size_t, std::vector<GateIndex>> groups;
  for (std::size_t k = 0; k < ors.size(); ++k) groups[root(k)].push_back(ors[k]);

  std::map<GateIndex, std::map<TreeIndex, std::size_t>> options;
  auto options_for = [&](GateIndex a) -> const std::map<TreeIndex, std::size_t>& {
    auto it = options.find(a);
    if (it != options.end()) return it->second;
    const Gate& g = c.gate(a);
    std::map<TreeIndex, std::size_t> m;
    for (auto [n, side] : admissible_nodes(view, vars[g.inputs[0]], vars[g.inputs[1]])) m.emplace(n, side);
    return options.emplace(a, std::move(m)).first->second;
  };

  const std::size_t rows = std::size_t{1} << c.universe().size();
  for (const auto& [_, group] : groups) {
    std::set<GateIndex> ands;
    for (GateIndex o : group) ands.insert(c.gate(o).inputs.begin(), c.gate(o).inputs.end());
    std::optional<std::set<TreeIndex>> common;
    for (GateIndex a : ands) {
      std::set<TreeIndex> here;
      for (const auto& [n, side] : options_for(a)) here.insert(n);
      if (!common) {
        common = std::move(here);
        continue;
      }
      std::set<TreeIndex> both;
      std::set_intersection(common->begin(), common->end(), here.begin(), here.end(),
                            std::inserter(both, both.end()));
      common = std::move(both);
    }
    bool exclusive_somewhere = false;
    bool sdd_somewhere = false;
    for (TreeIndex n : common.value_or(std::set<TreeIndex>{})) {
      bool exclusive = true;
      bool exhaustive = true;
      for (GateIndex o : group) {
        Bits seen(rows);
        std::set<GateIndex> distinct(c.gate(o).inputs.begin(), c.gate(o).inputs.end());
        for (GateIndex a : distinct) {
          const Bits& prime = tables[c.gate(a).inputs[options_for(a).at(n)]];
          if (seen.intersects(prime)) exclusive = false;
          seen |= prime;
        }
        if (!seen.all()) exhaustive = false;
      }
      exclusive_somewhere = exclusive_somewhere || exclusive;
      sdd_somewhere = sdd_somewhere || (exclusive && exhaustive);
    }
    out.strongly_deterministic = out.strongly_deterministic && exclusive_somewhere;
    out.sdd = out.sdd && sdd_somewhere;
  }
  return out;
}

namespace {

Circuit copy_gates(const Circuit& c, VarUniverse universe, detail::IdPool& ids) {
  Circuit out(std::move(universe));
  for (const auto& g : c.gates()) {
    ids.reserve(g.id);
    switch (g.kind) {
      case GateKind::const_true: out.add_const(g.id, true); break;
      case GateKind::const_false: out.add_const(g.id, false); break;
      case GateKind::var: out.add_var(g.id, out.universe().at(c.universe().name(g.var))); break;
      case GateKind::neg: out.add_neg(g.id, out.universe().at(c.universe().name(g.var))); break;
      case GateKind::conj: out.add_and(g.id); break;
      case GateKind::disj: out.add_or(g.id); break;
    }
  }
  return out;
}

}  // namespace

Circuit smooth_circuit(const Circuit& c) {
  detail::IdPool ids;
  Circuit out = copy_gates(c, c.universe(), ids);
  const auto vars = gate_vars(c);
  const std::size_t n = c.universe().size();

  std::vector<std::optional<GateIndex>> tautology(n);
  auto taut = [&](VarId v) {
    if (!tautology[v]) {
      const std::string& name = c.universe().name(v);
      GateIndex pos = out.add_var(ids.fresh("sp_" + name), v);
      GateIndex neg = out.add_neg(ids.fresh("sn_" + name), v);
      tautology[v] = out.add_or(ids.fresh("st_" + name), {pos, neg});
    }
    return *tautology[v];
  };
  std::map<Bits, GateIndex> padding;
  // right-nested binary conjunction of tautologies
  auto pad = [&](const Bits& missing) {
    if (auto it = padding.find(missing); it != padding.end()) return it->second;
    std::vector<VarId> vs;
    for (auto v = missing.find_first(); v != Bits::npos; v = missing.find_next(v)) vs.push_back(v);
    GateIndex acc = taut(vs.back());
    for (std::size_t k = vs.size() - 1; k-- > 0;) acc = out.add_and(ids.fresh("sa"), {taut(vs[k]), acc});
    padding.emplace(missing, acc);
    return acc;
  };
  std::map<std::pair<GateIndex, Bits>, GateIndex> wrapped;

  for (GateIndex i = 0; i < c.gate_count(); ++i) {
    const Gate& g = c.gate(i);
    std::vector<GateIndex> inputs = g.inputs;
    if (g.kind == GateKind::disj) {
      for (GateIndex& in : inputs) {
        if (vars[in] == vars[i]) continue;
        Bits missing = vars[i] - vars[in];
        auto key = std::make_pair(in, missing);
        auto it = wrapped.find(key);
        if (it == wrapped.end())
          it = wrapped.emplace(key, out.add_and(ids.fresh(g.id + "_s"), {in, pad(missing)})).first;
        in = it->second;
      }
    }
    out.set_inputs(i, std::move(inputs));
  }
  out.set_output(c.output());
  return out;
}

Circuit condition(const Circuit& c, const std::map<std::string, bool>& partial) {
  for (const auto& [name, _] : partial) c.universe().at(name);
  VarUniverse rest;
  for (const auto& name : c.universe().names())
    if (partial.count(name) == 0) rest.add(name);
  Circuit out(rest);
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::var || g.kind == GateKind::neg) {
      const std::string& name = c.universe().name(g.var);
      auto fixed = partial.find(name);
      if (fixed != partial.end()) {
        out.add_const(g.id, fixed->second == (g.kind == GateKind::var));
      } else if (g.kind == GateKind::var) {
        out.add_var(g.id, rest.at(name));
      } else {
        out.add_neg(g.id, rest.at(name));
      }
      continue;
    }
    switch (g.kind) {
      case GateKind::const_true: out.add_const(g.id, true); break;
      case GateKind::const_false: out.add_const(g.id, false); break;
      case GateKind::conj: out.add_and(g.id); break;
      default: out.add_or(g.id); break;
    }
  }
  for (GateIndex i = 0; i < c.gate_count(); ++i) out.set_inputs(i, c.gate(i).inputs);
  out.set_output(c.output());
  return out;
}

CountResult count_models_smooth_ddnnf(const Circuit& c, const CountOptions& options) {
  const auto vars = gate_vars(c);
  if (!decomposable_with(c, vars)) throw Error(Errc::not_decomposable, "counting needs a decomposable circuit");
  if (!smooth_with(c, vars)) throw Error(Errc::not_smooth, "counting needs a smooth circuit");
  CountResult result;
  if (c.universe().size() <= options.limit) {
    if (!check_deterministic(c, options.limit))
      throw Error(Errc::not_deterministic, "counting needs a deterministic circuit");
    result.determinism_verified = true;
  } else if (!options.attest_deterministic) {
    require_within_limit(c.universe(), options.limit);
  }
  std::vector<BigInt> count(c.gate_count());
  for (GateIndex i : c.topological_order()) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::const_false: count[i] = 0; break;
      case GateKind::const_true:
      case GateKind::var:
      case GateKind::neg: count[i] = 1; break;
      case GateKind::conj:
        count[i] = 1;
        for (GateIndex j : g.inputs) count[i] *= count[j];
        break;
      case GateKind::disj:
        count[i] = 0;
        for (GateIndex j : g.inputs) count[i] += count[j];
        break;
    }
  }
  const GateIndex o = c.output();
  result.value = count[o] * pow2(c.universe().size() - vars[o].count());
  return result;
}

}  // namespace circus
