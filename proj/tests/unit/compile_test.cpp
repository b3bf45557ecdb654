#include "circus/compile.hpp"
#include "helpers.hpp"

using namespace circus;
using namespace circus::testing;

namespace {

SigmaTree labeled(const TreeSkeleton& t, std::uint64_t bits) {
  SigmaTree s{t, std::vector<std::uint8_t>(t.size())};
  for (std::size_t i = 0; i < t.size(); ++i) s.labels[i] = bits >> i & 1;
  return s;
}

Assignment labeling_assignment(const Circuit& c, const TreeSkeleton& t, const SigmaTree& s) {
  Assignment a(c.universe().size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (auto v = c.universe().find(t.node(i).id)) a.set(*v, s.labels[i]);
  return a;
}

}  // namespace

TEST_SUITE("compile") {
  TEST_CASE("the ordered diagram of the fourth figure") {
    auto d = load<NBdd>("fig4.nbdd");
    auto out = bdd_to_circuit(d);
    CHECK(oracle_equivalent(circuit_table(out.circuit), diagram_table(d)));
    CHECK(oracle_equivalent(circuit_table(out.circuit), circuit_table(load<Circuit>("fig4.nnf"))));
    auto r = classify_syntactic(out.circuit);
    CHECK(r.decomposable);
    CHECK(r.decision);
    REQUIRE(out.vtree.has_value());
    CHECK_EQ(out.vtree->variables(), std::vector<std::string>{"x", "y"});
    CHECK(check_structured(out.circuit, *out.vtree).ok);
    CHECK(out.report.claims.decomposable);
    CHECK(out.report.claims.structured);
    CHECK(out.report.claims.decision);
    CHECK(out.report.claims.deterministic);
  }

  TEST_CASE("sinks and multiple sources") {
    NBdd t(VarUniverse({"X"}));
    t.add_sink("t", true);
    auto c = bdd_to_circuit(t).circuit;
    CHECK_EQ(c.gate(c.output()).kind, GateKind::const_true);

    auto d1 = load<NBdd>("fig1.nbdd");
    auto c1 = bdd_to_circuit(d1);
    CHECK(oracle_equivalent(circuit_table(c1.circuit), diagram_table(d1)));
    CHECK_EQ(c1.circuit.gate(c1.circuit.output()).kind, GateKind::disj);
    CHECK_FALSE(c1.report.claims.decomposable);
  }

  TEST_CASE("inputs outside the translation's domain") {
    CHECK_ERRC(bdd_to_circuit(load<NBdd>("fig5.nbdd")), Errc::invalid_structure);
    NBdd z(VarUniverse({"X"}), Semantics::zero_suppressed);
    z.add_sink("t", true);
    CHECK_ERRC(bdd_to_circuit(z), Errc::semantics_mismatch);
  }

  TEST_CASE("claims hold on random diagrams") {
    Rng rng(53);
    for (int i = 0; i < 180; ++i) {
      DiagramParams p{std::size_t(1 + i % 7), std::size_t(2 + i % 9), static_cast<Ambiguity>(i % 3),
                      static_cast<Shape>((i / 3) % 3)};
      auto d = random_diagram(rng, p);
      if (i % 5 == 0) d = complete(d, is_free(d) ? CompletionMode::free : CompletionMode::generic);
      auto out = bdd_to_circuit(d);
      const auto& c = out.circuit;
      const auto& claims = out.report.claims;
      CHECK(oracle_equivalent(circuit_table(c), diagram_table(d)));
      auto r = classify_syntactic(c);
      if (claims.decomposable) CHECK(r.decomposable);
      if (claims.decision) CHECK(r.decision);
      if (claims.formula) CHECK(r.formula);
      if (claims.smooth) CHECK(r.smooth);
      if (claims.deterministic) CHECK(check_deterministic(c));
      if (claims.structured) {
        REQUIRE(out.vtree.has_value());
        CHECK(check_structured(c, *out.vtree).ok);
      }
    }
  }

  TEST_CASE("word provenance") {
    auto a1 = load<Nfa>("a1.nfa");
    CHECK_EQ(oracle_count(diagram_table(nfa_provenance(a1, 2))), golden::a1_len2);
    CHECK_EQ(oracle_count(diagram_table(nfa_provenance(a1, 8))), golden::a1_len8);

    auto zero = nfa_provenance(a1, 0);
    CHECK_EQ(zero.node_count(), 1);
    CHECK_FALSE(evaluate(zero, Assignment(0)));
    Nfa eps({"0", "1"});
    auto s = eps.add_state("s");
    eps.set_initial(s);
    eps.set_final(s);
    CHECK(evaluate(nfa_provenance(eps, 0), Assignment(0)));

    CHECK_ERRC(nfa_provenance(load<Nfa>("abc.nfa"), 2), Errc::invalid_alphabet);

    Rng rng(59);
    for (int i = 0; i < 40; ++i) {
      auto a = random_nfa(rng, 1 + i % 5, 0.5, i % 3 == 0);
      auto cls = nfa_classify(a);
      for (std::size_t n = 1; n <= 6; ++n) {
        auto d = nfa_provenance(a, n);
        CHECK(is_complete(d));
        auto order = ordered_witness(d);
        REQUIRE(order.has_value());
        for (std::size_t k = 0; k < n; ++k) CHECK_EQ((*order)[k], k);
        CHECK(d.node_count() <= (n + 1) * (a.state_count() + 1));
        for (const auto& w : binary_words(n)) {
          Assignment x(n);
          for (std::size_t k = 0; k < n; ++k) x.set(k, w[k] == "1");
          CHECK_EQ(evaluate(d, x), nfa_accepts(a, w));
        }
        if (cls.deterministic) CHECK(is_deterministic(d));
        if (cls.unambiguous) CHECK(is_unambiguous(d).value());
      }
    }
  }

  TEST_CASE("tree provenance") {
    auto b1 = load<Nfta>("b1.nfta");
    auto one = nfta_provenance(b1, load<TreeSkeleton>("t1.tree"));
    CHECK_EQ(oracle_count(circuit_table(one.circuit)), 1);
    auto three = nfta_provenance(b1, load<TreeSkeleton>("t3.tree"));
    CHECK_EQ(oracle_count(circuit_table(three.circuit)), golden::b1_t3);

    Nfta none;
    auto q = none.add_state("q");
    none.add_init(true, q);
    none.add_transition(q, q, true, q);
    auto empty = nfta_provenance(none, load<TreeSkeleton>("t3.tree"));
    CHECK_EQ(empty.circuit.gate(empty.circuit.output()).kind, GateKind::const_false);

    Rng rng(61);
    auto skeletons = all_skeletons(7);
    for (int i = 0; i < 25; ++i) {
      auto a = random_nfta(rng, 1 + i % 3, 0.4, i % 3 == 0);
      bool unamb = nfta_classify(a).unambiguous;
      for (const auto& t : skeletons) {
        auto p = nfta_provenance(a, t);
        const auto& c = p.circuit;
        CHECK(is_smooth(c));
        CHECK(is_decomposable(c));
        CHECK(check_structured(c, p.vtree).ok);
        if (unamb) CHECK(check_deterministic(c));
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << t.size()); ++bits) {
          auto s = labeled(t, bits);
          CHECK_EQ(evaluate_circuit(c, labeling_assignment(c, t, s)), nfta_accepts(a, s));
        }
      }
    }
  }
}
