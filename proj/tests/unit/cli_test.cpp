#include "circus/cli.hpp"
#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace circus;
using namespace circus::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("circus_cli_test_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check reports the free witness of the first figure") {
    auto r = run({"check", fixture("fig1.nbdd")});
    CHECK_EQ(r.code, 0);
    CHECK(r.out.find("free: no") != std::string::npos);
    CHECK(r.out.find("free-witness: u1 u3 u5 u7") != std::string::npos);
  }

  TEST_CASE("json reports") {
    auto r = run({"check", fixture("fig2b.nbdd"), "--json"});
    REQUIRE_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK_EQ(j["kind"], "nbdd");
    CHECK_EQ(j["flags"]["ordered"], true);
    CHECK_EQ(j["witnesses"]["order"], nlohmann::json::array({"X", "Y", "Z", "W"}));
    CHECK(j.contains("sizes"));

    auto s = run({"check", fixture("fig6.nnf"), "--vtree", fixture("fig6.vtree"), "--json"});
    REQUIRE_EQ(s.code, 0);
    auto k = nlohmann::json::parse(s.out);
    CHECK_EQ(k["flags"]["sdd"], true);
    CHECK_EQ(k["flags"]["strongly-deterministic"], true);
  }

  TEST_CASE("the three documented invocations") {
    auto out = temp_path("a1_len2.nbdd");
    auto c = run({"compile", "--op", "nfa2obdd", fixture("a1.nfa"), "--length", "2", "-o", out});
    CHECK_EQ(c.code, 0);
    auto n = run({"count", out, "--oracle"});
    CHECK_EQ(n.code, 0);
    CHECK_EQ(n.out, "3\n");
    auto e = run({"equiv", fixture("fig4.nbdd"), fixture("fig4.nnf")});
    CHECK_EQ(e.code, 0);
    CHECK_EQ(e.out, "equivalent\n");
    std::filesystem::remove(out);
  }

  TEST_CASE("evaluation") {
    CHECK_EQ(run({"eval", fixture("fig1.nbdd"), "--assign", "X=0,Y=0,Z=0,W=0"}).out, "1\n");
    CHECK_EQ(run({"eval", fixture("fig4.nnf"), "--assign", "x=1"}).out, "0\n");
    CHECK_EQ(run({"eval", fixture("a1.nfa"), "--word", "0,0,1"}).out, "1\n");
    CHECK_EQ(run({"eval", fixture("b1.nfta"), "--tree", fixture("t3.tree"), "--assign", "r=1"}).out, "1\n");
    CHECK_EQ(run({"eval", fixture("fig1.nbdd"), "--assign", "Q=1"}).code, 1);
  }

  TEST_CASE("exit codes") {
    CHECK_EQ(run({}).code, 2);
    CHECK_EQ(run({"frobnicate"}).code, 2);
    CHECK_EQ(run({"check", fixture("missing.nbdd")}).code, 2);
    auto bad = temp_path("bad.nbdd");
    { std::ofstream(bad) << "nbdd\nedge a 2 b\n"; }
    auto r = run({"check", bad});
    CHECK_EQ(r.code, 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    std::filesystem::remove(bad);
    CHECK_EQ(run({"transform", "--op", "complete:free", fixture("fig1.nbdd")}).code, 1);
    CHECK_EQ(run({"count", fixture("fig1.nbdd"), "--max-vars", "2"}).code, 1);
  }

  TEST_CASE("inequivalence prints a counterexample") {
    auto r = run({"equiv", fixture("fig2a.nbdd"), fixture("fig2b.nbdd")});
    if (r.code == 0) {
      CHECK_EQ(r.out, "equivalent\n");
    } else {
      CHECK_EQ(r.code, 1);
      CHECK(r.out.rfind("not equivalent\ncounterexample: ", 0) == 0);
    }
    CHECK_EQ(run({"equiv", fixture("fig4.nbdd"), fixture("fig2b.nbdd")}).code, 1);
  }

  TEST_CASE("transform and compile outputs reparse") {
    for (std::vector<std::string> args : {
             std::vector<std::string>{"transform", "--op", "complete:ordered", fixture("fig2b.nbdd")},
             {"transform", "--op", "or-elim", fixture("fig5.nbdd")},
             {"transform", "--op", "or-intro", fixture("fig1.nbdd")},
             {"transform", "--op", "std2zdd", fixture("fig4.nbdd")},
             {"transform", "--op", "freeify", fixture("fig2a.nbdd")},
             {"transform", "--op", "smooth", fixture("fig3.nnf")},
             {"transform", "--op", "trim", fixture("a2.nfa")},
             {"transform", "--op", "trim", fixture("b1.nfta")},
             {"transform", "--op", "condition:x=0", fixture("fig4.nnf")},
             {"compile", "--op", "bdd2nnf", fixture("fig4.nbdd")},
             {"compile", "--op", "binarize", fixture("abc.nfa")},
             {"compile", "--op", "nfa2obdd", fixture("abc.nfa"), "--length", "2"},
             {"compile", "--op", "nfta2sdnnf", fixture("b1.nfta"), "--tree", fixture("t7.tree")},
         }) {
      CAPTURE(args[2]);
      auto r = run(args);
      REQUIRE_EQ(r.code, 0);
      CHECK_NOTHROW(parse_document(r.out));
      CHECK_EQ(run(args).out, r.out);
    }
  }

  TEST_CASE("counting") {
    CHECK_EQ(run({"count", fixture("fig3.nnf")}).out, std::to_string(golden::fig3_nnf_models) + "\n");
    CHECK_EQ(run({"count", fixture("fig1.nbdd"), "--oracle"}).out, std::to_string(golden::fig1_models) + "\n");
    CHECK_EQ(run({"count", fixture("fig2b.nbdd")}).out, std::to_string(golden::fig2b_models) + "\n");
  }
}
