#include "helpers.hpp"

#include <algorithm>

using namespace circus;
using namespace circus::testing;

namespace {

std::vector<std::string> ids(const NBdd& d, const std::vector<NodeIndex>& path) {
  std::vector<std::string> out;
  for (auto i : path) out.push_back(d.node(i).id);
  return out;
}

}  // namespace

TEST_SUITE("bdd") {
  TEST_CASE("validation") {
    CHECK_NOTHROW(validate(load<NBdd>("fig1.nbdd")));

    NBdd lone(VarUniverse{});
    lone.add_sink("t", true);
    CHECK_NOTHROW(validate(lone));

    NBdd half(VarUniverse({"X"}));
    auto x = half.add_variable_node("x", "X");
    auto t = half.add_sink("t", true);
    half.add_edge(x, Label::zero, t);
    CHECK_ERRC(validate(half), Errc::missing_branch);

    NBdd out_of_sink(VarUniverse({"X"}));
    auto s = out_of_sink.add_sink("s", true);
    auto y = out_of_sink.add_variable_node("y", "X");
    out_of_sink.add_edge(s, Label::zero, y);
    out_of_sink.add_edge(y, Label::zero, s);
    out_of_sink.add_edge(y, Label::one, s);
    CHECK_THROWS_AS(validate(out_of_sink), Error);

    NBdd cyc(VarUniverse({"X"}));
    auto a = cyc.add_variable_node("a", "X");
    auto b = cyc.add_variable_node("b", "X");
    cyc.add_edge(a, Label::zero, b);
    cyc.add_edge(a, Label::one, b);
    cyc.add_edge(b, Label::zero, a);
    cyc.add_edge(b, Label::one, a);
    CHECK_THROWS_AS(validate(cyc), Error);

  }

  TEST_CASE("duplicate edges are refused, parallel labels are fine") {
    NBdd d(VarUniverse({"X"}));
    auto x = d.add_variable_node("x", "X");
    auto t = d.add_sink("t", true);
    CHECK(d.add_edge(x, Label::zero, t));
    CHECK(d.add_edge(x, Label::one, t));
    CHECK_FALSE(d.add_edge(x, Label::one, t));
    CHECK_EQ(d.edge_count(), 2);
  }

  TEST_CASE("evaluation of the first figure") {
    auto d = load<NBdd>("fig1.nbdd");
    Assignment zero(4);
    CHECK(evaluate(d, zero));
    CHECK_EQ(count_accepting_runs(d, zero), golden::fig1_all_zero_runs);
    BigInt most = 0;
    for (const auto& a : enumerate_assignments(d.universe())) {
      auto runs = count_accepting_runs(d, a);
      CHECK_EQ(evaluate(d, a), runs >= 1);
      most = std::max(most, runs);
    }
    CHECK_EQ(most, golden::fig1_max_runs);
  }

  TEST_CASE("single sinks") {
    NBdd t(VarUniverse({"X", "Y"}));
    t.add_sink("t", true);
    for (const auto& a : enumerate_assignments(t.universe())) CHECK(evaluate(t, a));

    NBdd z(VarUniverse({"X", "Y"}), Semantics::zero_suppressed);
    z.add_sink("t", true);
    CHECK_EQ(table_string(diagram_table(z)), "1000");
  }

  TEST_CASE("two sources over an untested variable give two runs") {
    NBdd d(VarUniverse({"X"}));
    d.add_sink("a", true);
    d.add_sink("b", true);
    CHECK_EQ(count_accepting_runs(d, Assignment(1)), 2);
  }

  TEST_CASE("classification of the second figure") {
    auto b = classify(load<NBdd>("fig2b.nbdd"));
    CHECK(b.free);
    CHECK(b.ordered);
    CHECK(b.deterministic);
    CHECK_EQ(b.order, std::vector<VarId>{0, 1, 2, 3});
    CHECK_EQ(b.unambiguous, std::optional<bool>(true));

    auto a = classify(load<NBdd>("fig2a.nbdd"));
    CHECK(a.free);
    CHECK_FALSE(a.ordered);
    CHECK(a.tree);
    CHECK(a.forest);
  }

  TEST_CASE("the first figure is not free") {
    auto d = load<NBdd>("fig1.nbdd");
    auto r = classify(d);
    CHECK_FALSE(r.free);
    CHECK_FALSE(r.ordered);
    CHECK_FALSE(r.deterministic);
    CHECK_EQ(ids(d, r.free_witness), std::vector<std::string>{"u1", "u3", "u5", "u7"});
    CHECK_EQ(r.unambiguous, std::optional<bool>(false));
    CHECK_EQ(d.sources().size(), 2);
  }

  TEST_CASE("or-nodes are rejected by classify") {
    CHECK_ERRC(classify(load<NBdd>("fig5.nbdd")), Errc::invalid_structure);
  }

  TEST_CASE("unambiguity is left open above the limit") {
    auto d = load<NBdd>("fig2b.nbdd");
    CHECK_FALSE(is_unambiguous(d, 3).has_value());
    auto r = classify(d, 3);
    CHECK_FALSE(r.unambiguous.has_value());
    CHECK(r.free);
  }

  TEST_CASE("random diagrams respect the class hierarchy") {
    Rng rng(7);
    for (int i = 0; i < 150; ++i) {
      DiagramParams p;
      p.vars = 1 + i % 6;
      p.nodes = 2 + i % 9;
      p.ambiguity = static_cast<Ambiguity>(i % 3);
      p.shape = static_cast<Shape>((i / 3) % 3);
      auto d = random_diagram(rng, p);
      REQUIRE_NOTHROW(validate(d));
      auto r = classify(d);
      if (r.ordered) CHECK(r.free);
      if (r.deterministic) CHECK(r.unambiguous.value());
      if (p.shape == Shape::free) CHECK(r.free);
      if (p.shape == Shape::ordered) CHECK(r.ordered);
      if (p.ambiguity == Ambiguity::deterministic) CHECK(r.deterministic);
      if (p.ambiguity != Ambiguity::nondeterministic) CHECK(r.unambiguous.value());
      for (const auto& a : enumerate_assignments(d.universe())) {
        auto runs = count_accepting_runs(d, a);
        CHECK_EQ(evaluate(d, a), runs >= 1);
        if (r.unambiguous.value()) CHECK(runs <= 1);
      }
    }
  }
}
