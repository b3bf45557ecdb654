#include "circus/bdd.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <queue>

namespace circus {

char label_char(Label l) {
  switch (l) {
    case Label::zero: return '0';
    case Label::one: return '1';
    case Label::epsilon: return 'e';
  }
  return '?';
}

NBdd::NBdd(VarUniverse universe, Semantics semantics)
    : universe_(std::move(universe)), semantics_(semantics) {}

NodeIndex NBdd::push_node(BddNode n) {
  if (n.id.empty()) throw Error(Errc::invalid_structure, "empty node id");
  if (index_.count(n.id) != 0) throw Error(Errc::duplicate_id, n.id);
  NodeIndex i = nodes_.size();
  index_.emplace(n.id, i);
  nodes_.push_back(std::move(n));
  out_.emplace_back();
  in_degree_.push_back(0);
  return i;
}

NodeIndex NBdd::add_variable_node(std::string id, VarId var) {
  if (var >= universe_.size()) throw Error(Errc::unknown_variable, "variable index out of range");
  return push_node(BddNode{std::move(id), NodeKind::variable, var, false});
}

NodeIndex NBdd::add_variable_node(std::string id, std::string_view var) {
  return add_variable_node(std::move(id), universe_.at(var));
}

NodeIndex NBdd::add_sink(std::string id, bool value) {
  return push_node(BddNode{std::move(id), NodeKind::sink, 0, value});
}

NodeIndex NBdd::add_or_node(std::string id) {
  allow_or_ = true;
  return push_node(BddNode{std::move(id), NodeKind::disjunction, 0, false});
}

bool NBdd::add_edge(NodeIndex src, Label label, NodeIndex dst) {
  if (src >= nodes_.size() || dst >= nodes_.size())
    throw Error(Errc::unknown_id, "edge endpoint out of range");
  if (!edge_set_.emplace(src, label, dst).second) return false;
  edges_.push_back(BddEdge{src, label, dst});
  out_[src].push_back(OutEdge{label, dst});
  ++in_degree_[dst];
  return true;
}

bool NBdd::add_edge(std::string_view src, Label label, std::string_view dst) {
  return add_edge(at(src), label, at(dst));
}

bool NBdd::has_or_nodes() const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [](const BddNode& n) { return n.kind == NodeKind::disjunction; });
}

std::optional<NodeIndex> NBdd::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex NBdd::at(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::unknown_id, "no node '" + std::string(id) + "'");
}

std::vector<NodeIndex> NBdd::sources() const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
    if (in_degree_[i] == 0) out.push_back(i);
  return out;
}

std::vector<NodeIndex> NBdd::topological_order() const {
  std::vector<std::size_t> indeg = in_degree_;
  std::deque<NodeIndex> ready;
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::vector<NodeIndex> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    NodeIndex u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (const auto& e : out_[u])
      if (--indeg[e.dst] == 0) ready.push_back(e.dst);
  }
  if (order.size() != nodes_.size()) throw Error(Errc::cyclic_graph, "diagram has a directed cycle");
  return order;
}

void validate(const NBdd& d) {
  if (d.node_count() == 0) throw Error(Errc::invalid_structure, "diagram has no nodes");
  d.topological_order();
  if (d.semantics() == Semantics::zero_suppressed && d.has_or_nodes())
    throw Error(Errc::invalid_structure, "zero-suppressed diagrams cannot contain or-nodes");
  if (!d.or_nodes_allowed() && d.has_or_nodes())
    throw Error(Errc::invalid_structure, "or-nodes are not enabled for this diagram");
  for (NodeIndex i = 0; i < d.node_count(); ++i) {
    const BddNode& n = d.node(i);
    const auto& out = d.out(i);
    switch (n.kind) {
      case NodeKind::sink:
        if (!out.empty()) throw Error(Errc::sink_with_out_edge, "sink '" + n.id + "' has out-edges");
        break;
      case NodeKind::disjunction:
        if (out.empty()) throw Error(Errc::missing_branch, "or-node '" + n.id + "' has no out-edge");
        for (const auto& e : out)
          if (e.label != Label::epsilon)
            throw Error(Errc::stray_epsilon, "or-node '" + n.id + "' has a labeled out-edge");
        break;
      case NodeKind::variable: {
        bool zero = false, one = false;
        for (const auto& e : out) {
          if (e.label == Label::epsilon)
            throw Error(Errc::stray_epsilon, "node '" + n.id + "' has an e-labeled out-edge");
          (e.label == Label::zero ? zero : one) = true;
        }
        if (!zero || !one)
          throw Error(Errc::missing_branch,
                      "node '" + n.id + "' lacks a " + (zero ? "1" : "0") + "-edge");
        break;
      }
    }
  }
}

namespace {

bool edge_follows(const BddNode& n, Label l, const Assignment& a) {
  if (n.kind == NodeKind::disjunction) return true;
  return l == label_of(a[n.var]);
}

bool evaluate_standard(const NBdd& d, const Assignment& a) {
  std::vector<char> reached(d.node_count(), 0);
  for (NodeIndex s : d.sources()) reached[s] = 1;
  for (NodeIndex u : d.topological_order()) {
    if (!reached[u]) continue;
    const BddNode& n = d.node(u);
    if (n.kind == NodeKind::sink) {
      if (n.value) return true;
      continue;
    }
    for (const auto& e : d.out(u))
      if (edge_follows(n, e.label, a)) reached[e.dst] = 1;
  }
  return false;
}

// States pair a node with the set of 1-valued variables tested so far; the run
// accepts only once all of them are covered.
bool evaluate_zero_suppressed(const NBdd& d, const Assignment& a) {
  const std::size_t n = d.universe().size();
  Bits ones(n);
  for (VarId v = 0; v < n; ++v) ones[v] = a[v];
  std::set<std::pair<NodeIndex, Bits>> seen;
  std::deque<std::pair<NodeIndex, Bits>> work;
  for (NodeIndex s : d.sources()) {
    auto st = std::make_pair(s, Bits(n));
    if (seen.insert(st).second) work.push_back(st);
  }
  while (!work.empty()) {
    auto [u, covered] = work.front();
    work.pop_front();
    const BddNode& node = d.node(u);
    if (node.kind == NodeKind::sink) {
      if (node.value && covered == ones) return true;
      continue;
    }
    Bits next = covered;
    if (node.kind == NodeKind::variable && a[node.var]) next.set(node.var);
    for (const auto& e : d.out(u)) {
      if (!edge_follows(node, e.label, a)) continue;
      auto st = std::make_pair(e.dst, next);
      if (seen.insert(st).second) work.push_back(std::move(st));
    }
  }
  return false;
}

}  // namespace

bool evaluate(const NBdd& d, const Assignment& a) {
  if (a.size() != d.universe().size())
    throw Error(Errc::universe_mismatch, "assignment size does not match the universe");
  return d.semantics() == Semantics::standard ? evaluate_standard(d, a)
                                              : evaluate_zero_suppressed(d, a);
}

namespace {

BigInt count_zero_suppressed_runs(const NBdd& d, const Assignment& a) {
  const std::size_t n = d.universe().size();
  Bits ones(n);
  for (VarId v = 0; v < n; ++v) ones[v] = a[v];
  std::map<std::pair<NodeIndex, Bits>, BigInt> memo;
  std::function<BigInt(NodeIndex, const Bits&)> runs = [&](NodeIndex u, const Bits& covered) {
    auto key = std::make_pair(u, covered);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const BddNode& node = d.node(u);
    BigInt total = 0;
    if (node.kind == NodeKind::sink) {
      total = (node.value && covered == ones) ? 1 : 0;
    } else {
      Bits next = covered;
      if (node.kind == NodeKind::variable && a[node.var]) next.set(node.var);
      for (const auto& e : d.out(u))
        if (edge_follows(node, e.label, a)) total += runs(e.dst, next);
    }
    memo.emplace(std::move(key), total);
    return total;
  };
  BigInt total = 0;
  for (NodeIndex s : d.sources()) total += runs(s, Bits(n));
  return total;
}

}  // namespace

BigInt count_accepting_runs(const NBdd& d, const Assignment& a) {
  if (a.size() != d.universe().size())
    throw Error(Errc::universe_mismatch, "assignment size does not match the universe");
  if (d.semantics() == Semantics::zero_suppressed) return count_zero_suppressed_runs(d, a);
  auto order = d.topological_order();
  std::vector<BigInt> runs(d.node_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BddNode& n = d.node(*it);
    if (n.kind == NodeKind::sink) {
      runs[*it] = n.value ? 1 : 0;
      continue;
    }
    BigInt total = 0;
    for (const auto& e : d.out(*it))
      if (edge_follows(n, e.label, a)) total += runs[e.dst];
    runs[*it] = std::move(total);
  }
  BigInt total = 0;
  for (NodeIndex s : d.sources()) total += runs[s];
  return total;
}

TruthTable diagram_table(const NBdd& d, std::size_t limit) {
  return oracle_table([&](const Assignment& a) { return evaluate(d, a); }, d.universe(), limit);
}

namespace {

std::vector<NodeIndex> shortest_path(const NBdd& d, const std::vector<NodeIndex>& from,
                                     NodeIndex to) {
  std::vector<std::optional<NodeIndex>> parent(d.node_count());
  std::vector<char> seen(d.node_count(), 0);
  std::deque<NodeIndex> q;
  for (NodeIndex s : from) {
    seen[s] = 1;
    q.push_back(s);
  }
  while (!q.empty()) {
    NodeIndex u = q.front();
    q.pop_front();
    if (u == to) break;
    for (const auto& e : d.out(u)) {
      if (seen[e.dst]) continue;
      seen[e.dst] = 1;
      parent[e.dst] = u;
      q.push_back(e.dst);
    }
  }
  std::vector<NodeIndex> path{to};
  while (parent[path.back()]) path.push_back(*parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool is_free(const NBdd& d, std::vector<NodeIndex>* witness) {
  const std::size_t n = d.universe().size();
  auto order = d.topological_order();
  // below[u]: labels of nodes strictly reachable from u
  std::vector<Bits> below(d.node_count(), Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (const auto& e : d.out(*it)) {
      below[*it] |= below[e.dst];
      const BddNode& child = d.node(e.dst);
      if (child.kind == NodeKind::variable) below[*it].set(child.var);
    }
  }
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    const BddNode& node = d.node(u);
    if (node.kind != NodeKind::variable || !below[u].test(node.var)) continue;
    if (witness != nullptr) {
      // source -> u, then u -> first repeat of the label, then on to a sink
      auto prefix = shortest_path(d, d.sources(), u);
      std::vector<NodeIndex> middle;
      {
        std::vector<std::optional<NodeIndex>> parent(d.node_count());
        std::vector<char> seen(d.node_count(), 0);
        std::deque<NodeIndex> q{u};
        seen[u] = 1;
        std::optional<NodeIndex> hit;
        while (!q.empty() && !hit) {
          NodeIndex x = q.front();
          q.pop_front();
          for (const auto& e : d.out(x)) {
            if (seen[e.dst]) continue;
            seen[e.dst] = 1;
            parent[e.dst] = x;
            const BddNode& c = d.node(e.dst);
            if (c.kind == NodeKind::variable && c.var == node.var) {
              hit = e.dst;
              break;
            }
            q.push_back(e.dst);
          }
        }
        for (NodeIndex x = *hit; x != u; x = *parent[x]) middle.push_back(x);
        std::reverse(middle.begin(), middle.end());
      }
      std::vector<NodeIndex> path = prefix;
      path.insert(path.end(), middle.begin(), middle.end());
      while (d.node(path.back()).kind != NodeKind::sink) path.push_back(d.out(path.back()).front().dst);
      *witness = std::move(path);
    }
    return false;
  }
  return true;
}

std::optional<std::vector<VarId>> ordered_witness(const NBdd& d) {
  if (!is_free(d)) return std::nullopt;
  const std::size_t n = d.universe().size();
  // precedence between labels of adjacent variable nodes, looking through or-nodes
  std::set<std::pair<VarId, VarId>> prec;
  auto order = d.topological_order();
  std::vector<Bits> next_labels(d.node_count(), Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (const auto& e : d.out(*it)) {
      const BddNode& child = d.node(e.dst);
      if (child.kind == NodeKind::variable) next_labels[*it].set(child.var);
      else if (child.kind == NodeKind::disjunction) next_labels[*it] |= next_labels[e.dst];
    }
  }
  std::vector<std::vector<VarId>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    const BddNode& node = d.node(u);
    if (node.kind != NodeKind::variable) continue;
    for (auto v = next_labels[u].find_first(); v != Bits::npos; v = next_labels[u].find_next(v)) {
      if (v == node.var || !prec.emplace(node.var, v).second) continue;
      succ[node.var].push_back(v);
      ++indeg[v];
    }
  }
  std::priority_queue<VarId, std::vector<VarId>, std::greater<>> ready;
  for (VarId v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<VarId> out;
  while (!ready.empty()) {
    VarId v = ready.top();
    ready.pop();
    out.push_back(v);
    for (VarId w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (out.size() != n) return std::nullopt;
  return out;
}

bool is_complete(const NBdd& d) {
  const std::size_t n = d.universe().size();
  auto order = d.topological_order();
  // tested[u]: variables tested on every path from u to a sink
  std::vector<Bits> tested(d.node_count(), Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BddNode& node = d.node(*it);
    if (node.kind == NodeKind::sink) continue;
    Bits common(n);
    common.set();
    for (const auto& e : d.out(*it)) common &= tested[e.dst];
    if (node.kind == NodeKind::variable) common.set(node.var);
    tested[*it] = std::move(common);
  }
  for (NodeIndex s : d.sources())
    if (!tested[s].all()) return false;
  return true;
}

bool is_deterministic(const NBdd& d) {
  if (d.has_or_nodes() || d.sources().size() != 1) return false;
  for (NodeIndex u = 0; u < d.node_count(); ++u) {
    if (d.node(u).kind != NodeKind::variable) continue;
    int zero = 0, one = 0;
    for (const auto& e : d.out(u)) ++(e.label == Label::zero ? zero : one);
    if (zero != 1 || one != 1) return false;
  }
  return true;
}

bool is_forest(const NBdd& d) {
  for (NodeIndex u = 0; u < d.node_count(); ++u)
    if (d.node(u).kind != NodeKind::sink && d.in_degree(u) > 1) return false;
  return true;
}

std::optional<bool> is_unambiguous(const NBdd& d, std::size_t limit) {
  if (d.universe().size() > limit) return std::nullopt;
  bool ok = true;
  for_each_assignment(
      d.universe(),
      [&](const Assignment& a) {
        if (ok && count_accepting_runs(d, a) > 1) ok = false;
      },
      limit);
  return ok;
}

DiagramClassReport classify(const NBdd& d, std::size_t limit) {
  if (d.has_or_nodes()) throw Error(Errc::invalid_structure, "classify expects a diagram without or-nodes");
  DiagramClassReport r;
  r.free = is_free(d, &r.free_witness);
  if (auto order = ordered_witness(d)) {
    r.ordered = true;
    r.order = std::move(*order);
  }
  r.unambiguous = is_unambiguous(d, limit);
  r.deterministic = is_deterministic(d);
  r.complete = is_complete(d);
  r.forest = is_forest(d);
  r.tree = r.forest && d.sources().size() == 1;
  return r;
}

}  // namespace circus
