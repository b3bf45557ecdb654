#include "circus/cli.hpp"

#include "circus/compile.hpp"
#include "circus/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace circus {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t oracle_limit(int flag) {
  if (flag >= 0) return static_cast<std::size_t>(flag);
  if (const char* env = std::getenv("CIRCUS_MAX_VARS"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw UsageError("CIRCUS_MAX_VARS must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultOracleLimit;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

template <typename T>
const T& expect(const Document& doc, const std::string& what) {
  if (const T* p = std::get_if<T>(&doc.payload)) return *p;
  throw UsageError(what + " expects a ." + std::string(to_string([] {
                     if constexpr (std::is_same_v<T, NBdd>) return DocumentKind::nbdd;
                     else if constexpr (std::is_same_v<T, Circuit>) return DocumentKind::nnf;
                     else if constexpr (std::is_same_v<T, VTree>) return DocumentKind::vtree;
                     else if constexpr (std::is_same_v<T, Nfa>) return DocumentKind::nfa;
                     else if constexpr (std::is_same_v<T, Nfta>) return DocumentKind::nfta;
                     else return DocumentKind::tree;
                   }())) +
                   " file, got ." + std::string(to_string(doc.kind)));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

/// "X=0,Y=1" -> map. Throws UsageError.
std::map<std::string, bool> parse_assignment(const std::string& spec) {
  std::map<std::string, bool> values;
  for (const auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("assignment item '" + item + "' is not NAME=0|1");
    std::string name = item.substr(0, eq), v = item.substr(eq + 1);
    if (v != "0" && v != "1") throw UsageError("value of '" + name + "' must be 0 or 1");
    if (!values.emplace(name, v == "1").second) throw UsageError("variable '" + name + "' assigned twice");
  }
  return values;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string yes_no(std::optional<bool> b) { return b ? yes_no(*b) : "unknown"; }
Json json_flag(std::optional<bool> b) { return b ? Json(*b) : Json(nullptr); }

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// A report is a list of (key, value, tag) rows rendered either as text or JSON.
struct Report {
  std::string kind;
  std::vector<std::tuple<std::string, std::optional<bool>, std::string>> flags;
  std::vector<std::pair<std::string, std::vector<std::string>>> witnesses;
  std::vector<std::pair<std::string, std::size_t>> sizes;
  std::vector<std::string> notes;

  void flag(std::string key, std::optional<bool> v, std::string tag) {
    flags.emplace_back(std::move(key), v, std::move(tag));
  }

  std::string text() const {
    std::ostringstream out;
    out << "kind: " << kind << '\n';
    for (const auto& [k, v] : sizes) out << k << ": " << v << '\n';
    for (const auto& [k, v, tag] : flags) out << k << ": " << yes_no(v) << " [" << tag << "]\n";
    for (const auto& [k, v] : witnesses) out << k << ": " << join(v) << '\n';
    for (const auto& n : notes) out << "note: " << n << '\n';
    return out.str();
  }

  std::string json() const {
    Json j;
    j["kind"] = kind;
    Json f = Json::object(), checks = Json::object(), w = Json::object(), s = Json::object();
    for (const auto& [k, v, tag] : flags) {
      f[k] = json_flag(v);
      checks[k] = tag;
    }
    for (const auto& [k, v] : witnesses) w[k] = v;
    for (const auto& [k, v] : sizes) s[k] = v;
    j["flags"] = f;
    j["checks"] = checks;
    j["witnesses"] = w;
    j["sizes"] = s;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2) + "\n";
  }
};

std::vector<std::string> node_names(const NBdd& d, const std::vector<NodeIndex>& nodes) {
  std::vector<std::string> out;
  for (NodeIndex n : nodes) out.push_back(d.node(n).id);
  return out;
}

Report report_nbdd(const NBdd& input, std::size_t limit) {
  Report r;
  r.kind = "nbdd";
  r.sizes = {{"variables", input.universe().size()}, {"nodes", input.node_count()}, {"edges", input.edge_count()}};
  const NBdd* d = &input;
  std::optional<NBdd> plain;
  if (input.has_or_nodes()) {
    plain = from_or_bdd(input);
    d = &*plain;
    r.notes.push_back("classified after or-node elimination");
  }
  r.witnesses.emplace_back("sources", node_names(input, input.sources()));
  r.flag("zero-suppressed", d->semantics() == Semantics::zero_suppressed, "syntactic");
  r.flag("or-nodes", input.has_or_nodes(), "syntactic");
  auto c = classify(*d, limit);
  r.flag("free", c.free, "syntactic");
  r.flag("ordered", c.ordered, "syntactic");
  r.flag("unambiguous", c.unambiguous, "semantic");
  r.flag("deterministic", c.deterministic, "syntactic");
  r.flag("complete", c.complete, "syntactic");
  r.flag("forest", c.forest, "syntactic");
  r.flag("tree", c.tree, "syntactic");
  if (!c.free) r.witnesses.emplace_back("free-witness", node_names(*d, c.free_witness));
  if (c.ordered) {
    std::vector<std::string> order;
    for (VarId v : c.order) order.push_back(d->universe().name(v));
    r.witnesses.emplace_back("order", order);
  }
  if (!c.unambiguous) r.notes.push_back("unambiguity not decided: universe exceeds the oracle limit");
  return r;
}

Report report_nnf(const Circuit& c, const std::optional<VTree>& vtree, std::size_t limit) {
  Report r;
  r.kind = "nnf";
  r.sizes = {{"variables", c.universe().size()}, {"gates", c.gate_count()}, {"wires", c.wire_count()}};
  auto s = classify_syntactic(c);
  r.flag("decomposable", s.decomposable, "syntactic");
  r.flag("decision", s.decision, "syntactic");
  r.flag("smooth", s.smooth, "syntactic");
  r.flag("formula", s.formula, "syntactic");
  r.flag("read-once", s.read_once, "syntactic");
  const bool small = c.universe().size() <= limit;
  r.flag("deterministic", small ? std::optional<bool>(check_deterministic(c, limit)) : std::nullopt, "semantic");
  if (!small) r.notes.push_back("semantic checks skipped: universe exceeds the oracle limit");
  if (vtree) {
    if (!s.decomposable) {
      r.flag("structured", false, "syntactic");
      r.notes.push_back("structuredness needs a decomposable circuit");
      return r;
    }
    auto st = check_structured(c, *vtree);
    r.flag("structured", st.ok, "syntactic");
    if (!st.ok && st.witness) r.witnesses.emplace_back("structure-witness", std::vector{c.gate(*st.witness).id});
    if (st.ok && small) {
      auto sd = check_strong_det_and_sdd(c, *vtree, limit);
      r.flag("strongly-deterministic", sd.strongly_deterministic, "semantic");
      r.flag("sdd", sd.sdd, "semantic");
    } else {
      r.flag("strongly-deterministic", st.ok ? std::nullopt : std::optional<bool>(false), "semantic");
      r.flag("sdd", st.ok ? std::nullopt : std::optional<bool>(false), "semantic");
    }
  }
  return r;
}

Report report_nfa(const Nfa& a) {
  Report r;
  r.kind = "nfa";
  const Nfa t = nfa_trim(a);
  r.sizes = {{"letters", a.alphabet().size()},
             {"states", a.state_count()},
             {"transitions", a.transitions().size()},
             {"size", a.size()},
             {"trimmed-states", t.state_count()}};
  auto c = nfa_classify(a);
  r.flag("deterministic", c.deterministic, "syntactic");
  r.flag("unambiguous", c.unambiguous, "decided");
  r.flag("trimmed", t.state_count() == a.state_count(), "syntactic");
  return r;
}

Report report_nfta(const Nfta& a) {
  Report r;
  r.kind = "nfta";
  const Nfta t = nfta_trim(a);
  r.sizes = {{"states", a.state_count()},
             {"transitions", a.transitions().size()},
             {"iota", a.inits().size()},
             {"size", a.size()},
             {"trimmed-states", t.state_count()}};
  auto c = nfta_classify(a);
  r.flag("deterministic", c.deterministic, "syntactic");
  r.flag("unambiguous", c.unambiguous, "decided");
  r.flag("trimmed", t.state_count() == a.state_count(), "syntactic");
  return r;
}

template <typename Tree>
Report report_tree(const Tree& t, const std::string& kind) {
  Report r;
  r.kind = kind;
  std::size_t leaves = t.leaves().size();
  r.sizes = {{"nodes", t.size()}, {"leaves", leaves}, {"internal", t.size() - leaves}};
  if constexpr (std::is_same_v<Tree, VTree>) r.witnesses.emplace_back("variables", t.variables());
  return r;
}

VarUniverse universe_of(const Document& doc) {
  if (auto d = std::get_if<NBdd>(&doc.payload)) return d->universe();
  if (auto c = std::get_if<Circuit>(&doc.payload)) return c->universe();
  throw UsageError("expected a .nbdd or .nnf file, got ." + std::string(to_string(doc.kind)));
}

TruthTable table_of(const Document& doc, std::size_t limit) {
  if (auto d = std::get_if<NBdd>(&doc.payload)) return diagram_table(*d, limit);
  return circuit_table(std::get<Circuit>(doc.payload), limit);
}

std::optional<BigInt> structural_count(const NBdd& input) {
  NBdd d = input.has_or_nodes() ? from_or_bdd(input) : input;
  if (d.semantics() == Semantics::zero_suppressed) d = convert_semantics(d, SemanticsConversion::zdd_to_standard);
  if (!is_free(d) || !is_deterministic(d)) return std::nullopt;
  if (!is_complete(d)) d = complete(d, CompletionMode::free);
  return count_models_complete_free(d);
}

std::optional<BigInt> structural_count(const Circuit& c, std::size_t limit, bool attest) {
  if (!is_decomposable(c)) return std::nullopt;
  if (c.universe().size() <= limit) {
    if (!check_deterministic(c, limit)) return std::nullopt;
  } else if (!attest) {
    return std::nullopt;
  }
  CountOptions opt;
  opt.limit = limit;
  opt.attest_deterministic = attest;
  return count_models_smooth_ddnnf(is_smooth(c) ? c : smooth_circuit(c), opt).value;
}

std::string encoding_comments(const Binarization& b) {
  std::string out = "# width " + std::to_string(b.width) + "\n";
  for (const auto& letter : b.letters) out += "# code " + letter + " " + b.codes.at(letter) + "\n";
  return out;
}

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge compilation toolkit: decision diagrams, NNF circuits, automata", "circus"};
  app.require_subcommand(1);
  // subcommands hand --max-vars up to the top level
  app.fallthrough();
  int max_vars = -1;
  app.add_option("--max-vars", max_vars, "Oracle variable limit (overrides CIRCUS_MAX_VARS)")->check(CLI::NonNegativeNumber);

  std::string in_path, out_path, other_path, op, assign, word, vtree_path, vtree_out, tree_path;
  bool json = false, oracle = false, attest = false;
  std::size_t length = 0;
  bool length_given = false;

  auto* check = app.add_subcommand("check", "Classify a file and print a report");
  check->add_option("file", in_path, "Input file")->required();
  check->add_flag("--json", json, "Machine-readable report");
  check->add_option("--vtree", vtree_path, "V-tree for structuredness checks (.nnf only)");

  auto* eval = app.add_subcommand("eval", "Evaluate a diagram, circuit or automaton");
  eval->add_option("file", in_path, "Input file")->required();
  eval->add_option("--assign", assign, "NAME=0|1,... (missing variables are 0)");
  eval->add_option("--word", word, "Comma-separated letters (.nfa)");
  eval->add_option("--tree", tree_path, "Tree skeleton (.nfta; labels come from --assign)");

  auto* transform = app.add_subcommand("transform", "Rewrite a file");
  transform->add_option("--op", op, "complete:generic|complete:free|complete:ordered|smooth|trim|freeify|"
                                    "or-elim|or-intro|zdd2std|std2zdd|condition:X=b[,Y=c]")
      ->required();
  transform->add_option("file", in_path, "Input file")->required();
  transform->add_option("-o,--output", out_path, "Output file (default stdout)");
  transform->add_option("--vtree", vtree_path, "V-tree to restrict alongside condition");
  transform->add_option("--vtree-out", vtree_out, "Where to write the restricted v-tree");

  auto* compile = app.add_subcommand("compile", "Compile between formalisms");
  compile->add_option("--op", op, "bdd2nnf|nfa2obdd|nfta2sdnnf|binarize")->required();
  compile->add_option("file", in_path, "Input file")->required();
  compile->add_option("--length", length, "Word length (nfa2obdd)");
  compile->add_option("--tree", tree_path, "Tree skeleton (nfta2sdnnf)");
  compile->add_option("-o,--output", out_path, "Output file (default stdout)");
  compile->add_option("--vtree-out", vtree_out, "Where to write the v-tree");

  auto* count = app.add_subcommand("count", "Count models");
  count->add_option("file", in_path, "Input file")->required();
  count->add_flag("--oracle", oracle, "Cross-check against the truth table");
  count->add_flag("--assume-deterministic", attest, "Attest determinism above the oracle limit (.nnf)");

  auto* equiv = app.add_subcommand("equiv", "Compare two functions on every assignment");
  equiv->add_option("a", in_path, "First file")->required();
  equiv->add_option("b", other_path, "Second file")->required();

  std::vector<std::string> args(raw_args.rbegin(), raw_args.rend());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  length_given = compile->count("--length") > 0;
  const std::size_t limit = oracle_limit(max_vars);

  if (check->parsed()) {
    Document doc = load_document(in_path);
    Report r = std::visit(
        [&](const auto& x) -> Report {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, NBdd>) return report_nbdd(x, limit);
          else if constexpr (std::is_same_v<T, Circuit>) {
            std::optional<VTree> v;
            if (!vtree_path.empty()) v = expect<VTree>(load_document(vtree_path), "--vtree");
            return report_nnf(x, v, limit);
          } else if constexpr (std::is_same_v<T, Nfa>) return report_nfa(x);
          else if constexpr (std::is_same_v<T, Nfta>) return report_nfta(x);
          else if constexpr (std::is_same_v<T, VTree>) return report_tree(x, "vtree");
          else return report_tree(x, "tree");
        },
        doc.payload);
    out << (json ? r.json() : r.text());
    return 0;
  }

  if (eval->parsed()) {
    Document doc = load_document(in_path);
    bool value = false;
    if (doc.kind == DocumentKind::nbdd || doc.kind == DocumentKind::nnf) {
      auto a = Assignment::from_map(universe_of(doc), parse_assignment(assign));
      value = doc.kind == DocumentKind::nbdd ? evaluate(std::get<NBdd>(doc.payload), a)
                                             : evaluate_circuit(std::get<Circuit>(doc.payload), a);
    } else if (doc.kind == DocumentKind::nfa) {
      value = nfa_accepts(std::get<Nfa>(doc.payload), split(word, ','));
    } else if (doc.kind == DocumentKind::nfta) {
      if (tree_path.empty()) throw UsageError("eval on a tree automaton needs --tree");
      SigmaTree t{expect<TreeSkeleton>(load_document(tree_path), "--tree"), {}};
      t.labels.assign(t.skeleton.size(), 0);
      for (const auto& [name, v] : parse_assignment(assign)) t.labels[t.skeleton.at(name)] = v;
      value = nfta_accepts(std::get<Nfta>(doc.payload), t);
    } else {
      throw UsageError("cannot evaluate a ." + std::string(to_string(doc.kind)) + " file");
    }
    out << (value ? 1 : 0) << '\n';
    return 0;
  }

  if (transform->parsed()) {
    Document doc = load_document(in_path);
    std::string name = op, arg;
    if (auto colon = op.find(':'); colon != std::string::npos) {
      name = op.substr(0, colon);
      arg = op.substr(colon + 1);
    }
    std::string result;
    if (name == "complete") {
      const NBdd& d = expect<NBdd>(doc, "complete");
      CompletionMode mode;
      if (arg == "generic") mode = CompletionMode::generic;
      else if (arg == "free") mode = CompletionMode::free;
      else if (arg == "ordered") mode = CompletionMode::ordered;
      else throw UsageError("completion mode must be generic, free or ordered");
      result = serialize(complete(d, mode));
    } else if (name == "freeify") {
      result = serialize(freeify_forest(expect<NBdd>(doc, "freeify")));
    } else if (name == "or-elim") {
      result = serialize(from_or_bdd(expect<NBdd>(doc, "or-elim")));
    } else if (name == "or-intro") {
      result = serialize(to_or_bdd(expect<NBdd>(doc, "or-intro")));
    } else if (name == "zdd2std") {
      result = serialize(convert_semantics(expect<NBdd>(doc, "zdd2std"), SemanticsConversion::zdd_to_standard));
    } else if (name == "std2zdd") {
      result = serialize(convert_semantics(expect<NBdd>(doc, "std2zdd"), SemanticsConversion::standard_to_zdd));
    } else if (name == "smooth") {
      result = serialize(smooth_circuit(expect<Circuit>(doc, "smooth")));
    } else if (name == "trim") {
      if (doc.kind == DocumentKind::nfa) result = serialize(nfa_trim(std::get<Nfa>(doc.payload)));
      else result = serialize(nfta_trim(expect<Nfta>(doc, "trim")));
    } else if (name == "condition") {
      const Circuit& c = expect<Circuit>(doc, "condition");
      Circuit conditioned = condition(c, parse_assignment(arg));
      result = serialize(conditioned);
      if (!vtree_out.empty()) {
        if (vtree_path.empty()) throw UsageError("--vtree-out needs --vtree");
        auto v = restrict_vtree(expect<VTree>(load_document(vtree_path), "--vtree"), conditioned.universe());
        if (!v) throw Error(Errc::empty_order, "no variables remain after conditioning");
        write_output(vtree_out, serialize(*v), out);
      }
    } else {
      throw UsageError("unknown transform '" + op + "'");
    }
    write_output(out_path, result, out);
    return 0;
  }

  if (compile->parsed()) {
    Document doc = load_document(in_path);
    std::string result;
    if (op == "bdd2nnf") {
      auto compiled = bdd_to_circuit(expect<NBdd>(doc, "bdd2nnf"), limit);
      result = serialize(compiled.circuit);
      if (!vtree_out.empty()) {
        if (!compiled.vtree) throw Error(Errc::mode_precondition_violated, "diagram is not ordered; no v-tree to write");
        write_output(vtree_out, serialize(*compiled.vtree), out);
      }
    } else if (op == "nfa2obdd") {
      if (!length_given) throw UsageError("nfa2obdd needs --length");
      const Nfa& a = expect<Nfa>(doc, "nfa2obdd");
      auto sorted = a.alphabet();
      std::sort(sorted.begin(), sorted.end());
      if (sorted == std::vector<std::string>{"0", "1"}) {
        result = serialize(nfa_provenance(a, length));
      } else {
        // larger alphabets go through the binary encoding
        auto b = binarize_alphabet(a);
        result = encoding_comments(b) + serialize(nfa_provenance(b.automaton, length * b.width));
      }
    } else if (op == "nfta2sdnnf") {
      if (tree_path.empty()) throw UsageError("nfta2sdnnf needs --tree");
      auto p = nfta_provenance(expect<Nfta>(doc, "nfta2sdnnf"), expect<TreeSkeleton>(load_document(tree_path), "--tree"));
      result = serialize(p.circuit);
      if (!vtree_out.empty()) write_output(vtree_out, serialize(p.vtree), out);
    } else if (op == "binarize") {
      auto b = binarize_alphabet(expect<Nfa>(doc, "binarize"));
      result = encoding_comments(b) + serialize(b.automaton);
    } else {
      throw UsageError("unknown compile op '" + op + "'");
    }
    write_output(out_path, result, out);
    return 0;
  }

  if (count->parsed()) {
    Document doc = load_document(in_path);
    universe_of(doc);
    std::optional<BigInt> structural;
    if (auto d = std::get_if<NBdd>(&doc.payload)) structural = structural_count(*d);
    else structural = structural_count(std::get<Circuit>(doc.payload), limit, attest);
    if (oracle || !structural) {
      BigInt truth = oracle_count(table_of(doc, limit));
      if (structural && *structural != truth)
        throw Error(Errc::semantics_mismatch,
                    "structural count " + to_string(*structural) + " disagrees with oracle count " + to_string(truth));
      structural = truth;
    }
    out << to_string(*structural) << '\n';
    return 0;
  }

  if (equiv->parsed()) {
    Document a = load_document(in_path), b = load_document(other_path);
    VarUniverse ua = universe_of(a), ub = universe_of(b);
    if (!ua.same_set(ub)) throw Error(Errc::universe_mismatch, "the two files range over different variables");
    TruthTable ta = table_of(a, limit);
    TruthTable tb = table_of(b, limit).reindexed(ua);
    if (ta.bits() == tb.bits()) {
      out << "equivalent\n";
      return 0;
    }
    std::uint64_t row = 0;
    while (ta[row] == tb[row]) ++row;
    Assignment x = Assignment::from_row(ua.size(), row);
    std::vector<std::string> items;
    for (VarId v = 0; v < ua.size(); ++v) items.push_back(ua.name(v) + "=" + (x[v] ? "1" : "0"));
    out << "not equivalent\ncounterexample: " << join(items, ",") << " (" << in_path << ": " << (ta[row] ? 1 : 0)
        << ", " << other_path << ": " << (tb[row] ? 1 : 0) << ")\n";
    return 1;
  }
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::parse_error ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace circus
