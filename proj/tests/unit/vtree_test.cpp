#include "helpers.hpp"

using namespace circus;
using namespace circus::testing;

namespace {

std::vector<std::string> leaf_vars(const VTree& v) {
  std::vector<std::string> out;
  for (auto l : v.leaves()) out.push_back(v.var(l));
  return out;
}

}  // namespace

TEST_SUITE("vtree") {
  TEST_CASE("right-linear trees") {
    auto one = right_linear({"X"});
    CHECK_EQ(one.size(), 1);
    CHECK(one.is_leaf(one.root()));

    auto two = right_linear({"X", "Y"});
    CHECK_EQ(two.var(two.left(two.root())), "X");
    CHECK_EQ(two.var(two.right(two.root())), "Y");

    auto four = right_linear({"X", "Y", "Z", "W"});
    CHECK_EQ(leaf_vars(four), std::vector<std::string>{"X", "Y", "Z", "W"});
    CHECK_EQ(four.depth(*four.leaf_of("W")), 3);
    CHECK_EQ(four.depth(*four.leaf_of("X")), 1);

    CHECK_ERRC(right_linear({}), Errc::empty_order);
    CHECK_ERRC(right_linear({"X", "X"}), Errc::duplicate_variable);
  }

  TEST_CASE("leaf push") {
    auto skeletons = all_skeletons(7);
    CHECK_EQ(skeletons.size(), 1 + 1 + 2 + 5);
    for (const auto& t : skeletons) {
      auto v = leaf_push(t);
      CHECK_EQ(v.leaves().size(), t.size());
      VarUniverse u;
      for (const auto& n : t.nodes()) u.add(n.id);
      CHECK_NOTHROW(validate_vtree(v, u));
    }

    auto t3 = load<TreeSkeleton>("t3.tree");
    auto v3 = leaf_push(t3);
    CHECK_EQ(v3.leaves().size(), 3);
    CHECK_EQ(v3.var(v3.left(v3.root())), "r");
    auto inner = v3.right(v3.root());
    CHECK_EQ(v3.var(v3.left(inner)), "a");
    CHECK_EQ(v3.var(v3.right(inner)), "b");

    auto v7 = leaf_push(load<TreeSkeleton>("t7.tree"));
    CHECK_EQ(v7.leaves().size(), 7);
    CHECK_EQ(v7.size() - v7.leaves().size(), 6);

    auto v1 = leaf_push(load<TreeSkeleton>("t1.tree"));
    CHECK_EQ(v1.size(), 1);
  }

  TEST_CASE("validation against a universe") {
    auto v = load<VTree>("fig3.vtree");
    CHECK_NOTHROW(validate_vtree(v, VarUniverse({"fg", "dtr", "nf", "na"})));
    CHECK_ERRC(validate_vtree(right_linear({"X", "Y", "Z"}), VarUniverse({"X", "Y", "Z", "W"})),
               Errc::leaf_set_mismatch);

    VTree broken;
    auto a = broken.add_leaf("a", "X");
    auto n = broken.add_internal("n");
    broken.set_children(n, a, std::nullopt);
    broken.set_root(n);
    CHECK_ERRC(validate_vtree(broken, VarUniverse({"X"})), Errc::not_full_binary);
  }

  TEST_CASE("restriction drops leaves and splices unary nodes") {
    auto v = right_linear({"X", "Y", "Z"});
    auto r = restrict_vtree(v, VarUniverse({"X", "Z"}));
    REQUIRE(r.has_value());
    CHECK_EQ(leaf_vars(*r), std::vector<std::string>{"X", "Z"});
    CHECK_EQ(r->size(), 3);
    CHECK_FALSE(restrict_vtree(v, VarUniverse{}).has_value());
  }

  TEST_CASE("tree queries") {
    auto v = load<VTree>("fig6.vtree");
    auto b = *v.leaf_of("B"), a = *v.leaf_of("A"), c = *v.leaf_of("C");
    CHECK_EQ(v.node(v.lca(b, a)).id, "v2");
    CHECK_EQ(v.node(v.lca(b, c)).id, "v1");
    auto post = v.postorder();
    CHECK_EQ(post.back(), v.root());
  }
}
