#include "helpers.hpp"

using namespace circus;
using namespace circus::testing;

TEST_SUITE("core") {
  TEST_CASE("universe rejects duplicates and bad names") {
    VarUniverse u({"X", "Y"});
    CHECK_EQ(u.size(), 2);
    CHECK_EQ(u.at("Y"), 1);
    CHECK_ERRC(u.add("X"), Errc::duplicate_variable);
    CHECK_ERRC(u.add("a b"), Errc::invalid_variable);
    CHECK_ERRC(u.at("Z"), Errc::unknown_variable);
    CHECK(u.same_set(VarUniverse({"Y", "X"})));
    CHECK_FALSE(u == VarUniverse({"Y", "X"}));
  }

  TEST_CASE("rows put the first variable at the top bit") {
    auto a = Assignment::from_row(3, 1);
    CHECK_FALSE(a[0]);
    CHECK_FALSE(a[1]);
    CHECK(a[2]);
    CHECK_EQ(Assignment::from_row(3, 4).row(), 4);
    VarUniverse u({"X", "Y"});
    auto b = Assignment::from_map(u, {{"X", true}});
    CHECK_EQ(b.row(), 2);
    CHECK_ERRC(Assignment::from_map(u, {{"Q", true}}), Errc::unknown_variable);
  }

  TEST_CASE("constant true over two variables") {
    VarUniverse u({"X", "Y"});
    auto t = oracle_table([](const Assignment&) { return true; }, u);
    CHECK_EQ(table_string(t), "1111");
    CHECK_EQ(oracle_count(t), 4);
  }

  TEST_CASE("equivalence ignores variable order but not variable sets") {
    VarUniverse xy({"X", "Y"}), yx({"Y", "X"});
    auto f = oracle_table([](const Assignment& a) { return a[0] && !a[1]; }, xy);
    auto g = oracle_table([](const Assignment& a) { return !a[0] && a[1]; }, yx);
    CHECK(oracle_equivalent(f, g));
    CHECK_EQ(table_string(g.reindexed(xy)), table_string(f));
    auto h = oracle_table([](const Assignment&) { return false; }, VarUniverse({"X", "Z"}));
    CHECK_ERRC(oracle_equivalent(f, h), Errc::universe_mismatch);
  }

  TEST_CASE("limit is enforced rather than sampled") {
    std::vector<std::string> names;
    for (int i = 0; i < 5; ++i) names.push_back("v" + std::to_string(i));
    VarUniverse u(names);
    CHECK_ERRC(require_within_limit(u, 4), Errc::universe_too_large);
    CHECK_NOTHROW(require_within_limit(u, 5));
    CHECK_ERRC(enumerate_assignments(u, 3), Errc::universe_too_large);
  }

  TEST_CASE("exact big integers") {
    CHECK_EQ(to_string(pow2(70)), "1180591620717411303424");
    CHECK_EQ(projection_bits(2, 0).count(), 2);
    CHECK(projection_bits(2, 0)[3]);
    CHECK_FALSE(projection_bits(2, 0)[1]);
  }

  TEST_CASE("first figure's table matches the independent oracle") {
    auto d = load<NBdd>("fig1.nbdd");
    auto t = diagram_table(d);
    CHECK_EQ(table_string(t), std::string(golden::fig1_table));
    CHECK(t[0]);
  }
}
