#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "qrc/arith.hpp"
#include "qrc/parse.hpp"

using namespace qrc;

namespace {

Signature sig() { return parse_signature_header("sig: constants c c0 c1; relations S/1 R/2;"); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("goldens") {
  auto r = arith::Realization::opaque(sig());
  std::istringstream in(slurp(QRC_TEST_GOLDEN "/translate.txt"));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    std::string input = line.substr(0, tab), expected = line.substr(tab + 1);
    INFO(input);
    std::string got = input.find("|-") != std::string::npos
                          ? arith::render(arith::arith_sequent(parse_sequent(input, sig()), r))
                          : arith::render(arith::realize(parse_formula(input, sig()), r));
    CHECK(got == expected);
    ++n;
  }
  CHECK(n == 9);
}

TEST_CASE("template realization") {
  auto r = arith::Realization::parse(slurp(QRC_TEST_DATA "/../../docs/realization_example.txt"));
  CHECK(r.warnings().empty());
  auto f = arith::realize(parse_formula("A x0 . S(x0)", sig()), r);
  CHECK(arith::render(f) == "∃z₀ ((∃w (w = z₀ + u)) ∨ τ(u))");
  auto sigma = arith::Realization::parse("S/1 := sigma(#1, u)");
  CHECK(arith::render(arith::realize(parse_formula("A x0 . S(x0)", sig()), sigma)) ==
        "∃z₀ (σ(z₀,u) ∨ τ(u))");
}

TEST_CASE("realization errors") {
  CHECK_THROWS_AS(arith::Realization::parse("S/1 := #2 = u"), arith::ParseError);
  CHECK_THROWS_AS(arith::Realization::parse("S/1 := v = u"), arith::ParseError);
  CHECK_THROWS_AS(arith::Realization::parse("S/1 := E y0 . y0 = #1"), arith::ParseError);
  CHECK_THROWS_AS(arith::Realization::parse("S/1 := E u . u = #1"), arith::ParseError);
  CHECK_THROWS_AS(arith::Realization::parse("S/1 = u = #1"), arith::ParseError);
  try {
    arith::Realization::parse("% c\nS/1 := u = #1\nR/2 := (u = ");
    FAIL("expected error");
  } catch (const arith::ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
  arith::Realization only_s = arith::Realization::parse("S/1 := u = #1");
  CHECK_THROWS(arith::realize(parse_formula("R(c, c)", sig()), only_s));
}

TEST_CASE("sigma1 lint") {
  CHECK(arith::sigma1_lint(arith::parse("E a . E b <= a . a = b + u")).empty());
  CHECK_FALSE(arith::sigma1_lint(arith::parse("A a . a = u")).empty());
  CHECK_FALSE(arith::sigma1_lint(arith::parse("~tau(u)")).empty());
  CHECK_FALSE(arith::sigma1_lint(arith::parse("A a <= u . E b . a = b")).empty());
  auto r = arith::Realization::parse("S/1 := A a . a = #1");
  CHECK(r.warnings().size() == 1);
}

TEST_CASE("arithmetic parser") {
  auto f = arith::parse("(u = 0 | 1 + u * u < u) & ~(u <= 1)");
  CHECK(arith::render(f) == "((u = 0) ∨ (1 + u·u < u)) ∧ ¬(u ≤ 1)");
  CHECK(arith::render(arith::parse("(u + 1) * u = u")) == "(u + 1)·u = u");
  CHECK_THROWS_AS(arith::parse("u = 2"), arith::ParseError);
  CHECK_THROWS_AS(arith::parse("u ="), arith::ParseError);
  CHECK(arith::render_json(arith::parse("tau(u)")) ==
        R"({"kind":"Tau","terms":[{"var":"u"}]})");
}

TEST_CASE("property: shape, compositionality and free variables") {
  testgen::Gen gen(51);
  auto r = arith::Realization::opaque(gen.signature());
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula();
    auto t = arith::realize(f, r);
    // τ(u) ∨ φ' up to the ∃-prefix of universals.
    const arith::Formula* core = &t;
    while (core->kind == arith::Kind::Exists) core = &core->kids[0];
    Formula g = f;
    while (g.is_forall()) g = g.body();
    if (g.is_top()) {
      CHECK(core->kind == arith::Kind::Tau);
    } else {
      REQUIRE(core->kind == arith::Kind::Or);
    }
    if (f.is_and()) {
      auto idx = arith::index_map({f});
      CHECK(t == arith::disj(arith::realize(f.left(), r, idx), arith::realize(f.right(), r, idx)));
    }
    auto idx = arith::index_map({f});
    std::set<std::string> allowed{"u"};
    for (const auto& c : f.constants()) allowed.insert(idx.constants.at(c));
    for (const auto& x : f.free_vars()) allowed.insert(idx.variables.at(x));
    for (const auto& v : arith::free_variables(t)) CHECK(allowed.count(v));
  }
}
