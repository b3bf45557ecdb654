#include "helpers.hpp"

#include <set>

using namespace circus;
using namespace circus::testing;

namespace {

std::set<std::string> successors(const NBdd& d, const std::string& id, Label l) {
  std::set<std::string> out;
  for (const auto& e : d.out(d.at(id)))
    if (e.label == l) out.insert(d.node(e.dst).id);
  return out;
}

std::size_t or_count(const NBdd& d) {
  std::size_t n = 0;
  for (const auto& node : d.nodes()) n += node.kind == NodeKind::disjunction;
  return n;
}

bool same(const NBdd& a, const NBdd& b) { return oracle_equivalent(diagram_table(a), diagram_table(b)); }

NBdd fragment() {
  NBdd d(VarUniverse({"X", "Y", "Z", "W"}));
  d.add_variable_node("x", "X");
  for (auto [id, var] : {std::pair{"y", "Y"}, {"z", "Z"}, {"w", "W"}}) d.add_variable_node(id, var);
  d.add_sink("t", true);
  d.add_sink("f", false);
  d.add_edge("x", Label::zero, "y");
  d.add_edge("x", Label::zero, "z");
  d.add_edge("x", Label::one, "w");
  d.add_edge("x", Label::one, "z");
  for (auto id : {"y", "z", "w"}) {
    d.add_edge(id, Label::zero, "f");
    d.add_edge(id, Label::one, "t");
  }
  return d;
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("or-node introduction") {
    auto d = fragment();
    auto o = to_or_bdd(d);
    CHECK_EQ(or_count(o), 2);
    CHECK(same(d, o));
    auto det = load<NBdd>("fig2b.nbdd");
    auto same_shape = to_or_bdd(det);
    CHECK_EQ(or_count(same_shape), 0);
    CHECK_EQ(same_shape.node_count(), det.node_count());
    CHECK_EQ(same_shape.edge_count(), det.edge_count());

    NBdd two(VarUniverse({"X"}));
    two.add_sink("a", true);
    two.add_sink("b", false);
    auto joined = to_or_bdd(two);
    CHECK_EQ(or_count(joined), 1);
    CHECK_EQ(joined.sources().size(), 1);
    CHECK_EQ(joined.out(joined.sources()[0]).size(), 2);
  }

  TEST_CASE("or-node elimination on the fifth figure") {
    auto d = load<NBdd>("fig5.nbdd");
    auto e = from_or_bdd(d);
    CHECK_FALSE(e.has_or_nodes());
    CHECK_EQ(successors(e, "x", Label::zero), std::set<std::string>{"y", "z", "w"});
    CHECK_EQ(successors(e, "x", Label::one), std::set<std::string>{"z", "w", "v"});
    CHECK_EQ(table_string(diagram_table(e)), table_string(diagram_table(d)));
    CHECK_EQ(oracle_count(diagram_table(e)), golden::fig5_models);

    auto plain = load<NBdd>("fig2a.nbdd");
    auto kept = from_or_bdd(plain);
    CHECK_EQ(kept.node_count(), plain.node_count());
    CHECK_EQ(kept.edge_count(), plain.edge_count());
  }

  TEST_CASE("or-paths into sinks become direct edges") {
    NBdd d(VarUniverse({"X"}));
    d.add_variable_node("x", "X");
    d.add_or_node("o");
    d.add_sink("t", true);
    d.add_sink("f", false);
    d.add_edge("x", Label::one, "o");
    d.add_edge("x", Label::zero, "f");
    d.add_edge("o", Label::epsilon, "t");
    auto e = from_or_bdd(d);
    CHECK_EQ(successors(e, "x", Label::one), std::set<std::string>{"t"});
    CHECK(same(d, e));
  }

  TEST_CASE("or round trips on random diagrams") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
      auto d = random_diagram(rng, {std::size_t(1 + i % 6), std::size_t(3 + i % 7), Ambiguity::nondeterministic, Shape::any});
      auto back = from_or_bdd(to_or_bdd(d));
      CHECK(same(d, back));
      auto o = random_or_diagram(rng, 1 + i % 6, 3 + i % 8);
      REQUIRE_NOTHROW(validate(o));
      auto e = from_or_bdd(o);
      CHECK_NOTHROW(validate(e));
      CHECK(same(o, e));
    }
  }

  TEST_CASE("completion modes") {
    auto d = load<NBdd>("fig4.nbdd");
    CHECK_FALSE(is_complete(d));
    for (auto mode : {CompletionMode::generic, CompletionMode::free, CompletionMode::ordered}) {
      auto c = complete(d, mode);
      CHECK(is_complete(c));
      CHECK(same(d, c));
      CHECK_EQ(oracle_count(diagram_table(c)), 1);
    }
    auto o = complete(d, CompletionMode::ordered);
    CHECK_EQ(*ordered_witness(o), std::vector<VarId>{0, 1});

    NBdd t(VarUniverse({"X", "Y"}));
    t.add_sink("t", true);
    auto chain = complete(t, CompletionMode::generic);
    CHECK(is_complete(chain));
    CHECK_EQ(chain.node_count(), 3);
    CHECK_EQ(oracle_count(diagram_table(chain)), 4);

    CHECK_ERRC(complete(load<NBdd>("fig1.nbdd"), CompletionMode::free), Errc::mode_precondition_violated);
    CHECK_ERRC(complete(load<NBdd>("fig2a.nbdd"), CompletionMode::ordered), Errc::mode_precondition_violated);
  }

  TEST_CASE("completion preserves the class on random inputs") {
    Rng rng(5);
    for (int i = 0; i < 90; ++i) {
      DiagramParams p{std::size_t(1 + i % 6), std::size_t(2 + i % 8), static_cast<Ambiguity>(i % 3),
                      static_cast<Shape>((i / 3) % 3)};
      auto d = random_diagram(rng, p);
      auto before = classify(d);
      std::vector<CompletionMode> modes{CompletionMode::generic};
      if (before.free) modes.push_back(CompletionMode::free);
      if (before.ordered) modes.push_back(CompletionMode::ordered);
      for (auto mode : modes) {
        auto c = complete(d, mode);
        auto after = classify(c);
        CHECK(after.complete);
        CHECK(same(d, c));
        if (before.unambiguous.value()) CHECK(after.unambiguous.value());
        if (before.deterministic) CHECK(after.deterministic);
        if (mode == CompletionMode::free) CHECK(after.free);
        if (mode == CompletionMode::ordered) CHECK_EQ(after.order, before.order);
      }
      auto g = complete(d, CompletionMode::generic);
      std::size_t sinks = 0;
      for (const auto& n : d.nodes()) sinks += n.kind == NodeKind::sink;
      CHECK(g.node_count() <= d.node_count() + (d.universe().size() + 1) * sinks);
    }
  }

  TEST_CASE("counting complete free diagrams") {
    auto c = complete(load<NBdd>("fig4.nbdd"), CompletionMode::ordered);
    CHECK_EQ(count_models_complete_free(c), 1);
    NBdd t(VarUniverse({"X", "Y", "Z"}));
    t.add_sink("t", true);
    CHECK_EQ(count_models_complete_free(complete(t, CompletionMode::free)), 8);
    CHECK_ERRC(count_models_complete_free(load<NBdd>("fig4.nbdd")), Errc::not_complete);

    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
      auto d = random_complete_fbdd(rng, 1 + i % 10, 2 + i % 12);
      CHECK_EQ(count_models_complete_free(d), oracle_count(diagram_table(d)));
    }
  }

  TEST_CASE("semantics conversion") {
    NBdd z(VarUniverse({"X", "Y"}), Semantics::zero_suppressed);
    z.add_sink("t", true);
    auto s = convert_semantics(z, SemanticsConversion::zdd_to_standard);
    CHECK_EQ(s.semantics(), Semantics::standard);
    CHECK_EQ(oracle_count(diagram_table(s)), 1);
    CHECK(diagram_table(s)[0]);
    CHECK_ERRC(convert_semantics(z, SemanticsConversion::standard_to_zdd), Errc::semantics_mismatch);

    auto complete_one = complete(load<NBdd>("fig2b.nbdd"), CompletionMode::ordered);
    auto as_zdd = convert_semantics(complete_one, SemanticsConversion::standard_to_zdd);
    CHECK(same(complete_one, as_zdd));

    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      DiagramParams p{std::size_t(1 + i % 6), std::size_t(2 + i % 8), static_cast<Ambiguity>(i % 3),
                      static_cast<Shape>((i / 3) % 3)};
      auto d = random_diagram(rng, p);
      auto up = convert_semantics(d, SemanticsConversion::standard_to_zdd);
      CHECK_EQ(up.semantics(), Semantics::zero_suppressed);
      CHECK(same(d, up));
      auto down = convert_semantics(up, SemanticsConversion::zdd_to_standard);
      CHECK(same(d, down));

      NBdd raw = d;
      raw.set_semantics(Semantics::zero_suppressed);
      auto std_form = convert_semantics(raw, SemanticsConversion::zdd_to_standard);
      CHECK(same(raw, std_form));
      auto r = classify(d);
      if (r.unambiguous.value()) CHECK(is_unambiguous(std_form).value());
    }
  }

  TEST_CASE("free-ification of decision trees") {
    auto a = load<NBdd>("fig2a.nbdd");
    auto f = freeify_forest(a);
    CHECK_EQ(f.node_count(), a.node_count());
    CHECK(same(a, f));

    NBdd d(VarUniverse({"X"}));
    d.add_variable_node("x", "X");
    d.add_variable_node("x2", "X");
    d.add_sink("t", true);
    d.add_sink("f", false);
    d.add_edge("x", Label::one, "x2");
    d.add_edge("x", Label::zero, "f");
    d.add_edge("x2", Label::one, "t");
    d.add_edge("x2", Label::zero, "f");
    auto g = freeify_forest(d);
    CHECK(is_free(g));
    CHECK_EQ(successors(g, "x", Label::one), std::set<std::string>{"t"});

    CHECK_ERRC(freeify_forest(load<NBdd>("fig2b.nbdd")), Errc::not_a_forest);

    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
      auto t = random_decision_tree(rng, 1 + i % 4, 1 + i % 5, i % 2 == 1);
      auto out = freeify_forest(t);
      CHECK(is_free(out));
      CHECK(is_forest(out));
      CHECK(same(t, out));
      if (is_forest(t) && t.sources().size() == 1) CHECK(out.sources().size() == 1);
    }
  }
}
