#include "doctest.h"
#include "generators.hpp"
#include "qrc/decider.hpp"
#include "qrc/parse.hpp"

using namespace qrc;

namespace {

Signature sig() { return parse_signature_header("sig: constants c; relations S/1 R/2;"); }
Sequent Q(const std::string& s) { return parse_sequent(s, sig()); }

void check_certificate(const Verdict& v) {
  if (v.status == Status::Derivable) {
    REQUIRE(v.derivation);
    auto r = check_derivation(*v.derivation, sig());
    INFO(r.summary());
    CHECK(r.ok());
    CHECK(*r.conclusion == v.sequent);
  } else if (v.status == Status::NotDerivable) {
    REQUIRE(v.countermodel);
    auto r = validate_countermodel(*v.countermodel);
    INFO(r.summary());
    CHECK(r.ok());
  }
}

}  // namespace

TEST_CASE("spec examples") {
  auto a = decide(Q("<>(A x . S(x)) |- A x . <>S(x)"), sig());
  CHECK(a.status == Status::Derivable);
  check_certificate(a);

  auto b = decide(Q("S(x) |- <>S(x)"), sig());
  CHECK(b.status == Status::NotDerivable);
  CHECK(b.stats.method == "mdepth-precheck");
  check_certificate(b);

  auto c = decide(Q("A x . <>S(x) |- <>(A x . S(x))"), sig());
  CHECK(c.status == Status::NotDerivable);
  check_certificate(c);
}

TEST_CASE("mdepth precheck") {
  CHECK(mdepth_precheck(Q("T |- <>T"), sig()));
  CHECK(mdepth_precheck(Q("T |- <>T"), sig())->status == Status::NotDerivable);
  CHECK_FALSE(mdepth_precheck(Q("<>T |- <>T"), sig()));
  CHECK_FALSE(mdepth_precheck(Q("<><>T |- <>T"), sig()));
}

TEST_CASE("free variables are closed with reserved constants") {
  auto v = decide(Q("S(x) & R(x, y) |- R(y, x)"), sig());
  CHECK(v.status == Status::NotDerivable);
  check_certificate(v);
  CHECK(v.countermodel->assignment.values.count("x"));
  CHECK(v.countermodel->assignment.values.count("y"));
  for (const auto& wd : v.countermodel->model.worlds())
    for (const auto& [name, e] : wd.constants) CHECK_FALSE(is_reserved_constant(name));

  auto d = decide(Q("A y . R(x, y) |- R(x, c)"), sig());
  CHECK(d.status == Status::Derivable);
  check_certificate(d);
}

TEST_CASE("signature errors are reported before deciding") {
  CHECK_THROWS_AS(decide(Q("S(c) |- T"), parse_signature_header("sig: constants ; relations S/1;")),
                  SignatureError);
}

TEST_CASE("budget exhaustion is undecided, never a wrong verdict") {
  DeciderOptions o;
  o.budget = 1;
  o.max_worlds = 1;
  o.max_domain = 1;
  auto v = decide(Q("A x . A y . R(x, y) & S(c) |- <>T & S(c)"), sig(), o);
  CHECK(v.status != Status::Derivable);
  if (v.status == Status::Undecided) CHECK(v.note == "undecided at budget 1");
  auto w = decide(Q("(A x . S(x)) & <>S(c) |- A y . S(y)"), sig(), o);
  CHECK(w.status != Status::NotDerivable);
}

TEST_CASE("world ceiling") {
  CHECK(world_ceiling(Q("T |- T")) == 1);
  std::size_t d = 0;
  CHECK(world_ceiling(Q("<>T |- T"), &d) == 2);
  CHECK(d == 1);
  auto v = decide(Q("<>S(c) & <>R(c, c) |- <>(S(c) & R(c, c))"), sig());
  CHECK(v.status == Status::NotDerivable);
  CHECK(v.stats.term_model_worlds <= v.stats.world_ceiling);
}

TEST_CASE("property: certificates validate and verdicts are deterministic") {
  testgen::GenConfig cfg;
  cfg.constants = {"c"};
  testgen::Gen gen(41, cfg);
  int yes = 0, no = 0;
  for (int i = 0; i < 300; ++i) {
    Sequent s{gen.formula(), gen.formula()};
    auto v = decide(s, sig());
    INFO(to_string(s));
    REQUIRE(v.status != Status::Undecided);
    check_certificate(v);
    (v.status == Status::Derivable ? yes : no)++;
    if (v.status == Status::Derivable) CHECK(s.lhs.mdepth() >= s.rhs.mdepth());
    if (i % 10 == 0) {
      auto again = decide(s, sig());
      CHECK(again.status == v.status);
      CHECK(again.stats.expansions == v.stats.expansions);
    }
  }
  CHECK(yes > 20);
  CHECK(no > 20);
}

TEST_CASE("property: proof search and enumeration never both succeed") {
  testgen::GenConfig cfg;
  cfg.constants = {"c"};
  cfg.relations = {{"S", 1}};
  cfg.max_size = 5;
  testgen::Gen gen(42, cfg);
  Signature s1 = gen.signature();
  for (int i = 0; i < 300; ++i) {
    Sequent s{gen.formula(), gen.formula()};
    bool proved = Prover().derivable(s);
    bool refuted = refute(s, {2, 2, 0}).has_value();
    INFO(to_string(s));
    CHECK_FALSE((proved && refuted));
  }
}
