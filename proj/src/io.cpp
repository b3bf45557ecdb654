#include "circus/io.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace circus {

std::string_view to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::nbdd: return "nbdd";
    case DocumentKind::nnf: return "nnf";
    case DocumentKind::vtree: return "vtree";
    case DocumentKind::nfa: return "nfa";
    case DocumentKind::nfta: return "nfta";
    case DocumentKind::tree: return "tree";
  }
  return "?";
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  const std::string& directive() const { return tokens.front(); }
  std::size_t args() const { return tokens.size() - 1; }
  const std::string& arg(std::size_t i) const { return tokens.at(i + 1); }
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

/// Checks the header and returns the remaining lines.
std::vector<Line> body(std::string_view text, const std::string& header, std::vector<std::string>* header_args = nullptr) {
  auto lines = tokenize(text);
  if (lines.empty()) fail(1, "missing '" + header + "' header");
  if (lines.front().directive() != header)
    fail(lines.front().number, "expected header '" + header + "', found '" + lines.front().directive() + "'");
  if (header_args) header_args->assign(lines.front().tokens.begin() + 1, lines.front().tokens.end());
  else if (lines.front().args() != 0) fail(lines.front().number, "unexpected tokens after header");
  lines.erase(lines.begin());
  return lines;
}

void expect_args(const Line& l, std::size_t n) {
  if (l.args() != n)
    fail(l.number, "'" + l.directive() + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
}

void expect_some(const Line& l) {
  if (l.args() == 0) fail(l.number, "'" + l.directive() + "' needs at least one argument");
}

/// Runs `f`, turning model errors into parse errors at this line.
template <typename F>
auto at_line(const Line& l, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    fail(l.number, e.what());
  }
}

void unknown(const Line& l) { fail(l.number, "unknown directive '" + l.directive() + "'"); }

VarUniverse read_vars(const std::vector<Line>& lines) {
  VarUniverse u;
  for (const auto& l : lines) {
    if (l.directive() != "vars") continue;
    expect_some(l);
    for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] { return u.add(l.arg(i)); });
  }
  return u;
}

bool read_bool(const Line& l, const std::string& tok) {
  if (tok == "t") return true;
  if (tok == "f") return false;
  fail(l.number, "sink value must be t or f, found '" + tok + "'");
}

Label read_label(const Line& l, const std::string& tok) {
  if (tok == "0") return Label::zero;
  if (tok == "1") return Label::one;
  if (tok == "e") return Label::epsilon;
  fail(l.number, "edge label must be 0, 1 or e, found '" + tok + "'");
}

bool read_bit(const Line& l, const std::string& tok) {
  if (tok == "0") return false;
  if (tok == "1") return true;
  fail(l.number, "letter must be 0 or 1, found '" + tok + "'");
}

template <typename Tree>
void read_tree_nodes(Tree& t, const std::vector<Line>& lines, bool with_vars) {
  std::vector<const Line*> links;
  const Line* root = nullptr;
  for (const auto& l : lines) {
    if (l.directive() == "leaf") {
      expect_args(l, with_vars ? 2 : 1);
      at_line(l, [&] {
        if constexpr (std::is_same_v<Tree, VTree>) return t.add_leaf(l.arg(0), l.arg(1));
        else return t.add_leaf(l.arg(0));
      });
    } else if (l.directive() == "node") {
      if (l.args() < 2 || l.args() > 3) fail(l.number, "'node' takes an id and two children");
      at_line(l, [&] { return t.add_internal(l.arg(0)); });
      links.push_back(&l);
    } else if (l.directive() == "root") {
      expect_args(l, 1);
      if (root) fail(l.number, "root given twice");
      root = &l;
    } else {
      unknown(l);
    }
  }
  for (const Line* l : links) {
    at_line(*l, [&] {
      std::optional<TreeIndex> right;
      if (l->args() == 3) right = t.at(l->arg(2));
      t.set_children(t.at(l->arg(0)), t.at(l->arg(1)), right);
      return 0;
    });
  }
  if (!root) fail(lines.empty() ? 1 : lines.back().number, "missing 'root'");
  at_line(*root, [&] {
    t.set_root(t.at(root->arg(0)));
    return 0;
  });
}

}  // namespace

NBdd parse_nbdd(std::string_view text) {
  std::vector<std::string> flags;
  auto lines = body(text, "nbdd", &flags);
  Semantics sem = Semantics::standard;
  for (const auto& f : flags) {
    if (f == "zdd") sem = Semantics::zero_suppressed;
    else fail(1, "unknown header flag '" + f + "'");
  }
  NBdd d(read_vars(lines), sem);
  std::vector<const Line*> edges;
  for (const auto& l : lines) {
    const auto& dir = l.directive();
    if (dir == "vars") continue;
    if (dir == "node") {
      expect_args(l, 2);
      at_line(l, [&] { return d.add_variable_node(l.arg(0), std::string_view(l.arg(1))); });
    } else if (dir == "sink") {
      expect_args(l, 2);
      bool value = read_bool(l, l.arg(1));
      at_line(l, [&] { return d.add_sink(l.arg(0), value); });
    } else if (dir == "ornode") {
      expect_args(l, 1);
      if (sem == Semantics::zero_suppressed) fail(l.number, "zero-suppressed diagrams cannot have or-nodes");
      at_line(l, [&] { return d.add_or_node(l.arg(0)); });
    } else if (dir == "edge") {
      expect_args(l, 3);
      read_label(l, l.arg(1));
      edges.push_back(&l);
    } else {
      unknown(l);
    }
  }
  for (const Line* l : edges) {
    bool added = at_line(*l, [&] { return d.add_edge(l->arg(0), read_label(*l, l->arg(1)), l->arg(2)); });
    if (!added) fail(l->number, "duplicate edge");
  }
  validate(d);
  return d;
}

Circuit parse_nnf(std::string_view text) {
  auto lines = body(text, "nnf");
  Circuit c(read_vars(lines));
  std::vector<const Line*> wired;
  const Line* output = nullptr;
  for (const auto& l : lines) {
    const auto& dir = l.directive();
    if (dir == "vars") continue;
    if (dir == "output") {
      expect_args(l, 1);
      if (output) fail(l.number, "output given twice");
      output = &l;
      continue;
    }
    if (dir != "gate") unknown(l);
    if (l.args() < 2) fail(l.number, "'gate' needs an id and a kind");
    const std::string& kind = l.arg(1);
    at_line(l, [&] {
      if (kind == "true" || kind == "false") {
        if (l.args() != 2) fail(l.number, "constant gates take no inputs");
        return c.add_const(l.arg(0), kind == "true");
      }
      if (kind == "var" || kind == "neg") {
        if (l.args() != 3) fail(l.number, "'" + kind + "' takes one variable");
        return kind == "var" ? c.add_var(l.arg(0), std::string_view(l.arg(2)))
                             : c.add_neg(l.arg(0), std::string_view(l.arg(2)));
      }
      if (kind == "and" || kind == "or") {
        if (l.args() < 3) fail(l.number, "'" + kind + "' needs at least one input");
        wired.push_back(&l);
        return kind == "and" ? c.add_and(l.arg(0)) : c.add_or(l.arg(0));
      }
      fail(l.number, "unknown gate kind '" + kind + "'");
    });
  }
  for (const Line* l : wired) {
    at_line(*l, [&] {
      std::vector<GateIndex> inputs;
      for (std::size_t i = 2; i < l->args(); ++i) inputs.push_back(c.at(l->arg(i)));
      c.set_inputs(c.at(l->arg(0)), std::move(inputs));
      return 0;
    });
  }
  if (!output) fail(lines.empty() ? 1 : lines.back().number, "missing 'output'");
  at_line(*output, [&] {
    c.set_output(c.at(output->arg(0)));
    return 0;
  });
  validate(c);
  return c;
}

VTree parse_vtree(std::string_view text) {
  auto lines = body(text, "vtree");
  VTree t;
  read_tree_nodes(t, lines, true);
  t.validate_shape();
  std::set<std::string> seen;
  for (TreeIndex i : t.leaves())
    if (!seen.insert(t.var(i)).second) throw Error(Errc::leaf_set_mismatch, "variable '" + t.var(i) + "' labels two leaves");
  return t;
}

TreeSkeleton parse_tree(std::string_view text) {
  auto lines = body(text, "tree");
  TreeSkeleton t;
  read_tree_nodes(t, lines, false);
  t.validate_shape();
  return t;
}

Nfa parse_nfa(std::string_view text) {
  auto lines = body(text, "nfa");
  const Line* alphabet = nullptr;
  for (const auto& l : lines)
    if (l.directive() == "alphabet") {
      if (alphabet) fail(l.number, "alphabet given twice");
      expect_some(l);
      alphabet = &l;
    }
  if (!alphabet) fail(lines.empty() ? 1 : lines.front().number, "missing 'alphabet'");
  Nfa a = at_line(*alphabet, [&] {
    return Nfa(std::vector<std::string>(alphabet->tokens.begin() + 1, alphabet->tokens.end()));
  });
  for (const auto& l : lines)
    if (l.directive() == "states") {
      expect_some(l);
      for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] { return a.add_state(l.arg(i)); });
    }
  for (const auto& l : lines) {
    const auto& dir = l.directive();
    if (dir == "alphabet" || dir == "states") continue;
    if (dir == "initial") {
      expect_some(l);
      for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] {
          a.set_initial(a.states().at(l.arg(i)));
          return 0;
        });
    } else if (dir == "final") {
      for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] {
          a.set_final(a.states().at(l.arg(i)));
          return 0;
        });
    } else if (dir == "trans") {
      expect_args(l, 3);
      if (!at_line(l, [&] { return a.add_transition(l.arg(0), l.arg(1), l.arg(2)); })) fail(l.number, "duplicate transition");
    } else {
      unknown(l);
    }
  }
  return a;
}

Nfta parse_nfta(std::string_view text) {
  auto lines = body(text, "nfta");
  Nfta a;
  bool alphabet = false;
  for (const auto& l : lines) {
    if (l.directive() == "alphabet") {
      if (l.args() != 2 || l.arg(0) != "0" || l.arg(1) != "1") fail(l.number, "tree automata use 'alphabet 0 1'");
      alphabet = true;
    } else if (l.directive() == "states") {
      expect_some(l);
      for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] { return a.add_state(l.arg(i)); });
    }
  }
  if (!alphabet) fail(lines.empty() ? 1 : lines.front().number, "missing 'alphabet 0 1'");
  for (const auto& l : lines) {
    const auto& dir = l.directive();
    if (dir == "alphabet" || dir == "states") continue;
    if (dir == "final") {
      for (std::size_t i = 0; i < l.args(); ++i) at_line(l, [&] {
          a.set_final(a.states().at(l.arg(i)));
          return 0;
        });
    } else if (dir == "iota") {
      expect_args(l, 2);
      bool b = read_bit(l, l.arg(0));
      if (!at_line(l, [&] { return a.add_init(b, a.states().at(l.arg(1))); })) fail(l.number, "duplicate iota entry");
    } else if (dir == "trans") {
      expect_args(l, 4);
      bool b = read_bit(l, l.arg(2));
      bool added = at_line(l, [&] {
        return a.add_transition(a.states().at(l.arg(0)), a.states().at(l.arg(1)), b, a.states().at(l.arg(3)));
      });
      if (!added) fail(l.number, "duplicate transition");
    } else {
      unknown(l);
    }
  }
  return a;
}

DocumentKind detect_kind(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) fail(1, "missing header");
  const std::string& h = lines.front().directive();
  if (h == "nbdd") return DocumentKind::nbdd;
  if (h == "nnf") return DocumentKind::nnf;
  if (h == "vtree") return DocumentKind::vtree;
  if (h == "nfa") return DocumentKind::nfa;
  if (h == "nfta") return DocumentKind::nfta;
  if (h == "tree") return DocumentKind::tree;
  fail(lines.front().number, "unknown header '" + h + "'");
}

Document parse_document(std::string_view text, std::string source) {
  DocumentKind k = detect_kind(text);
  auto payload = [&]() -> Payload {
    switch (k) {
      case DocumentKind::nbdd: return parse_nbdd(text);
      case DocumentKind::nnf: return parse_nnf(text);
      case DocumentKind::vtree: return parse_vtree(text);
      case DocumentKind::nfa: return parse_nfa(text);
      case DocumentKind::nfta: return parse_nfta(text);
      case DocumentKind::tree: return parse_tree(text);
    }
    fail(1, "unknown document kind");
  }();
  return {k, std::move(payload), std::move(source)};
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str(), path);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += " " + x;
  return out;
}

void write_vars(std::ostringstream& out, const VarUniverse& u) {
  if (!u.empty()) out << "vars" << join(u.names()) << '\n';
}

template <typename Tree>
void write_tree_nodes(std::ostringstream& out, const Tree& t) {
  for (const auto& n : t.nodes()) {
    if (n.leaf) {
      out << "leaf " << n.id;
      if constexpr (std::is_same_v<Tree, VTree>) out << ' ' << n.var;
      out << '\n';
    } else {
      out << "node " << n.id;
      if (n.left) out << ' ' << t.node(*n.left).id;
      if (n.right) out << ' ' << t.node(*n.right).id;
      out << '\n';
    }
  }
  if (t.has_root()) out << "root " << t.node(t.root()).id << '\n';
}

}  // namespace

std::string serialize(const NBdd& d) {
  std::ostringstream out;
  out << "nbdd" << (d.semantics() == Semantics::zero_suppressed ? " zdd" : "") << '\n';
  write_vars(out, d.universe());
  for (const auto& n : d.nodes()) {
    switch (n.kind) {
      case NodeKind::variable: out << "node " << n.id << ' ' << d.universe().name(n.var) << '\n'; break;
      case NodeKind::sink: out << "sink " << n.id << ' ' << (n.value ? 't' : 'f') << '\n'; break;
      case NodeKind::disjunction: out << "ornode " << n.id << '\n'; break;
    }
  }
  for (const auto& e : d.edges())
    out << "edge " << d.node(e.src).id << ' ' << label_char(e.label) << ' ' << d.node(e.dst).id << '\n';
  return out.str();
}

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "nnf\n";
  write_vars(out, c.universe());
  for (const auto& g : c.gates()) {
    out << "gate " << g.id << ' ' << to_string(g.kind);
    if (g.kind == GateKind::var || g.kind == GateKind::neg) out << ' ' << c.universe().name(g.var);
    for (GateIndex i : g.inputs) out << ' ' << c.gate(i).id;
    out << '\n';
  }
  if (c.has_output()) out << "output " << c.gate(c.output()).id << '\n';
  return out.str();
}

std::string serialize(const VTree& v) {
  std::ostringstream out;
  out << "vtree\n";
  write_tree_nodes(out, v);
  return out.str();
}

std::string serialize(const TreeSkeleton& t) {
  std::ostringstream out;
  out << "tree\n";
  write_tree_nodes(out, t);
  return out.str();
}

std::string serialize(const Nfa& a) {
  std::ostringstream out;
  out << "nfa\nalphabet" << join(a.alphabet()) << '\n';
  if (a.state_count() > 0) out << "states" << join(a.states().names()) << '\n';
  std::vector<std::string> names;
  for (StateIndex q : a.initial_states()) names.push_back(a.states().name(q));
  if (!names.empty()) out << "initial" << join(names) << '\n';
  names.clear();
  for (StateIndex q : a.final_states()) names.push_back(a.states().name(q));
  out << "final" << join(names) << '\n';
  for (const auto& t : a.transitions())
    out << "trans " << a.states().name(t.from) << ' ' << a.alphabet()[t.letter] << ' ' << a.states().name(t.to) << '\n';
  return out.str();
}

std::string serialize(const Nfta& a) {
  std::ostringstream out;
  out << "nfta\nalphabet 0 1\n";
  if (a.state_count() > 0) out << "states" << join(a.states().names()) << '\n';
  std::vector<std::string> names;
  for (StateIndex q : a.final_states()) names.push_back(a.states().name(q));
  out << "final" << join(names) << '\n';
  for (const auto& i : a.inits()) out << "iota " << (i.letter ? 1 : 0) << ' ' << a.states().name(i.to) << '\n';
  for (const auto& t : a.transitions())
    out << "trans " << a.states().name(t.left) << ' ' << a.states().name(t.right) << ' ' << (t.letter ? 1 : 0) << ' '
        << a.states().name(t.to) << '\n';
  return out.str();
}

std::string serialize(const Payload& p) {
  return std::visit([](const auto& x) { return serialize(x); }, p);
}

}  // namespace circus
