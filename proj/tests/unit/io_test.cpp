#include "helpers.hpp"

#include <filesystem>
#include <sstream>

using namespace circus;
using namespace circus::testing;

namespace {

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(tok);
  }
  return out;
}

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture(""))) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string parse_error_message(std::string_view text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    CHECK_EQ(to_string(e.code()), to_string(Errc::parse_error));
    return e.what();
  }
  FAIL_CHECK("parsed");
  return {};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("every fixture round-trips") {
    auto files = fixture_files();
    CHECK(files.size() >= 18);
    for (const auto& f : files) {
      CAPTURE(f);
      auto text = read_file(f);
      auto doc = parse_document(text, f);
      auto once = serialize(doc.payload);
      auto again = parse_document(once);
      CHECK_EQ(again.kind, doc.kind);
      CHECK_EQ(serialize(again.payload), once);
      CHECK_EQ(tokens(once), tokens(text));
    }
  }

  TEST_CASE("kinds are taken from the header") {
    CHECK_EQ(detect_kind("# comment\nnbdd zdd\n"), DocumentKind::nbdd);
    CHECK_EQ(detect_kind("vtree\n"), DocumentKind::vtree);
    CHECK_EQ(load_document(fixture("b1.nfta")).kind, DocumentKind::nfta);
  }

  TEST_CASE("grammar errors carry line numbers") {
    auto m = parse_error_message("nbdd\nvars X\nnode a X\nsink t t\nedge a 2 t\n");
    CHECK(m.find("line 5") != std::string::npos);
    CHECK(parse_error_message("").find("line 1") != std::string::npos);
    parse_error_message("nbdd\nfrob x\n");
    parse_error_message("nnf\nvars X\ngate a var X\n");
    parse_error_message("nfta\nalphabet a b\nstates q\n");
    parse_error_message("nbdd zdd\nornode o\n");
    parse_error_message("nbdd\nvars X\nsink t t\nsink t f\n");
  }

  TEST_CASE("validation errors are forwarded") {
    try {
      parse_nbdd("nbdd\nvars X\nnode a X\nsink t t\nedge a 0 t\n");
      FAIL_CHECK("parsed");
    } catch (const Error& e) {
      CHECK_EQ(to_string(e.code()), to_string(Errc::missing_branch));
    }
    CHECK_ERRC(parse_vtree("vtree\nleaf a X\nleaf b X\nnode r a b\nroot r\n"), Errc::leaf_set_mismatch);
  }

  TEST_CASE("forward references and comments") {
    auto d = parse_nbdd("nbdd  # header\nedge a 0 t\nedge a 1 t\nnode a X\nsink t t\nvars X\n");
    CHECK_EQ(d.node_count(), 2);
    auto v = parse_vtree("vtree\nroot r\nnode r a b\nleaf a X\nleaf b Y\n");
    CHECK_EQ(v.variables(), std::vector<std::string>{"X", "Y"});
  }

  TEST_CASE("serialization is stable under reparsing random objects") {
    Rng rng(67);
    for (int i = 0; i < 40; ++i) {
      auto d = random_or_diagram(rng, 1 + i % 5, 2 + i % 7);
      auto s = serialize(d);
      CHECK_EQ(serialize(parse_nbdd(s)), s);
      auto c = random_dnnf(rng, 1 + i % 6, 3, i % 2 == 0);
      auto cs = serialize(c);
      CHECK_EQ(serialize(parse_nnf(cs)), cs);
      auto a = random_nfa(rng, 1 + i % 4, 0.5, false);
      auto as = serialize(a);
      CHECK_EQ(serialize(parse_nfa(as)), as);
      auto t = random_nfta(rng, 1 + i % 3, 0.4, false);
      auto ts = serialize(t);
      CHECK_EQ(serialize(parse_nfta(ts)), ts);
    }
  }
}
