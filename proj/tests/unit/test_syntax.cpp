#include "doctest.h"
#include "generators.hpp"
#include "qrc/parse.hpp"
#include "qrc/syntax.hpp"

using namespace qrc;

namespace {

Signature base_sig() { return parse_signature_header("sig: constants c d c0 c1; relations S/1 R/2 P/0;"); }

Formula F(const std::string& s) { return parse_formula(s, base_sig()); }

}  // namespace

TEST_CASE("parse and print round trip") {
  const char* samples[] = {
      "T", "S(x)", "S(c) & R(x,d)", "<>S(x)", "<><>T", "A x . S(x)", "A x . A y . R(x,y)",
      "<>(A x . S(x))", "(A x . S(x)) & S(c)", "S(c) & (A x . S(x))", "S(c) & (S(d) & S(x))",
      "<>(S(c) & T)", "P", "A x . <>(S(x) & R(x,c))",
  };
  for (const char* s : samples) {
    Formula f = F(s);
    CHECK(to_string(f) == s);
    CHECK(F(to_string(f)) == f);
  }
}

TEST_CASE("parser errors") {
  auto sig = base_sig();
  CHECK_THROWS_AS(parse_formula("S(x", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("S(x, y)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("Q(x)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("A c . S(c)", sig), ParseError);
  CHECK_THROWS_AS(parse_sequent("S(x)", sig), ParseError);
  try {
    parse_formula("S(x) & & S(x)", sig);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 8);
  }
}

TEST_CASE("signature inference") {
  Signature sig;
  auto s = parse_sequent_infer("A x . Q(x, y) |- <>Q(y, y)", sig);
  CHECK(sig.arity("Q") == 2);
  CHECK(s.rhs.mdepth() == 1);
  CHECK_THROWS(parse_sequent_infer("Q(x) |- T", sig));
}

TEST_CASE("signature header") {
  auto sig = base_sig();
  CHECK(parse_signature_header(sig.to_header()) == sig);
  CHECK(is_signature_header("sig: constants ; relations S/1;"));
  CHECK_THROWS_AS(parse_signature_header("sig: constants c c; relations;"), Error);
}

TEST_CASE("free variables and substitution") {
  Formula f = F("(A x . R(x, y)) & S(x)");
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
  CHECK(to_string(substitute(f, "x", Term::constant("c"))) == "(A x . R(x,y)) & S(c)");
  CHECK(to_string(substitute(f, "y", Term::constant("c"))) == "(A x . R(x,c)) & S(x)");
  CHECK(F("A x . R(x, y) & S(x)").is_forall());
  CHECK_FALSE(free_for(Term::var("x"), "y", f));
  CHECK_THROWS_AS(substitute(f, "y", Term::var("x")), SubstitutionError);
  // y is not free, so the substitution is vacuous even though it would capture.
  Formula g = F("A x . S(x)");
  CHECK(substitute(g, "y", Term::var("x")) == g);
}

TEST_CASE("depths") {
  CHECK(mdepth(F("<>(S(x) & <>T)")) == 2);
  CHECK(udepth(F("A x . A y . R(x, y) & A z . S(z)")) == 3);
  CHECK(udepth(F("(A x . A y . R(x, y)) & A z . S(z)")) == 2);
  CHECK(mdepth(FormulaSet{}) == 0);
  CHECK(udepth(FormulaSet{}) == 0);
  CHECK(mdepth(FormulaSet{F("<>T"), F("S(c)")}) == 1);
}

TEST_CASE("closure") {
  auto cl = closure(F("A x . A y . R(x, y)"), {"c", "d"});
  CHECK(cl.size() == 8);
  CHECK(cl.count(F("R(c, d)")));
  CHECK(cl.count(F("A y . R(d, y)")));
  CHECK(cl.count(Formula::top()));
  CHECK_THROWS_AS(closure(F("A x . S(x)"), {}), Error);
  auto cl2 = closure(F("<>(S(c) & S(d))"), {"c"});
  CHECK(cl2.count(F("S(c) & S(d)")));
  CHECK(cl2.count(F("S(d)")));
}

TEST_CASE("canonical order is size first") {
  FormulaSet s{F("S(c) & S(d)"), F("S(c)"), F("T")};
  CHECK(*s.begin() == Formula::top());
  CHECK(*std::prev(s.end()) == F("S(c) & S(d)"));
}

TEST_CASE("well-formedness") {
  auto sig = base_sig();
  check_well_formed(F("S(c)"), sig);
  Signature small = parse_signature_header("sig: constants c; relations S/1;");
  CHECK_THROWS_AS(check_well_formed(F("S(d)"), small), SignatureError);
  CHECK_THROWS_AS(check_well_formed(F("R(c, c)"), small), SignatureError);
  check_well_formed(Formula::pred("S", {Term::constant("#3")}), small);
}

TEST_CASE("property: printing round-trips on random formulas") {
  testgen::Gen g(7);
  Signature sig = g.signature();
  for (int i = 0; i < 500; ++i) {
    Formula f = g.formula();
    INFO(to_string(f));
    CHECK(parse_formula(to_string(f), sig) == f);
  }
}

TEST_CASE("property: substitution on fresh constants is injective") {
  testgen::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula();
    for (const auto& x : free_vars(f)) {
      Formula h = substitute(f, x, Term::constant("#9"));
      CHECK_FALSE(occurs_free(x, h));
      CHECK(h.mdepth() == f.mdepth());
      CHECK(h.udepth() == f.udepth());
    }
  }
}
