#include "doctest.h"
#include "generators.hpp"
#include "qrc/parse.hpp"
#include "qrc/semantics.hpp"

using namespace qrc;

namespace {

Signature sig() { return parse_signature_header("sig: constants c c0 c1; relations S/1 R/2;"); }
Formula F(const std::string& s) { return parse_formula(s, sig()); }
Sequent Q(const std::string& s) { return parse_sequent(s, sig()); }

// w -> v, domain(w) = {0}, domain(v) = {0, 1}, S(v) = {0}.
Model growing() {
  WorldData w{{0}, {}, {{"S", {}}}};
  WorldData v{{0, 1}, {}, {{"S", {{0}}}}};
  Model m({w, v});
  m.add_edge(0, 1);
  return m;
}

Element value(const Model& m, World w, const Assignment& g, const Term& t) {
  return t.is_const() ? m.world(w).constants.at(t.name) : g(t.name);
}

}  // namespace

TEST_CASE("adequacy") {
  Model single({WorldData{{0}, {}, {}}});
  CHECK(check_adequate(single).ok());

  Model shrink({WorldData{{0, 1}, {}, {}}, WorldData{{0}, {}, {}}});
  shrink.add_edge(0, 1);
  auto r = check_adequate(shrink);
  CHECK_FALSE(r.inclusive);
  CHECK(r.problems.at(0) == "not inclusive: (0,1,1)");

  Model chain({WorldData{{0}, {}, {}}, WorldData{{0}, {}, {}}, WorldData{{0}, {}, {}}});
  chain.add_edge(0, 1);
  chain.add_edge(1, 2);
  auto t = check_adequate(chain);
  CHECK_FALSE(t.transitive);
  CHECK(t.problems.at(0) == "not transitive: (0,1,2)");

  Model disc({WorldData{{0, 1}, {{"c", 0}}, {}}, WorldData{{0, 1}, {{"c", 1}}, {}}});
  disc.add_edge(0, 1);
  CHECK_FALSE(check_adequate(disc).concordant);

  Model empty({WorldData{}});
  CHECK_FALSE(check_adequate(empty).well_formed);
}

TEST_CASE("forcing examples") {
  Model single({WorldData{{0}, {}, {}}});
  auto g = default_assignment(single, 0);
  CHECK(forces(single, 0, g, Formula::top()));
  CHECK_FALSE(forces(single, 0, g, F("<>T")));

  Model m = growing();
  auto h = default_assignment(m, 0);
  CHECK(forces(m, 0, h, F("A x . <>S(x)")));
  CHECK_FALSE(forces(m, 0, h, F("<>(A x . S(x))")));
  CHECK_THROWS(forces(m, 0, h, F("S(c)")));
  CHECK_THROWS(forces(m, 0, h.with("x", 1), F("S(x)")));
}

TEST_CASE("restriction") {
  Model single({WorldData{{0}, {}, {}}});
  CHECK(restrict(single, 0) == single);

  Model chain({WorldData{{0}, {}, {}}, WorldData{{0}, {}, {}}, WorldData{{0}, {}, {}}});
  chain.add_edge(0, 1);
  chain.add_edge(1, 2);
  chain.add_edge(0, 2);
  auto r = restrict_at(chain, 1);
  CHECK(r.model.size() == 2);
  CHECK(r.origin == std::vector<World>{1, 2});
  CHECK(r.model.related(0, 1));
  CHECK_THROWS(restrict(chain, 5));
}

TEST_CASE("reinterpretation") {
  Model m({WorldData{{0, 1}, {{"c", 0}}, {{"S", {{1}}}}}});
  CHECK(reinterpret_constant(m, 0, "c", 0) == restrict(m, 0));
  auto g = default_assignment(m, 0);
  CHECK_FALSE(forces(m, 0, g, F("S(c)")));
  CHECK(forces(reinterpret_constant(m, 0, "c", 1), 0, g, F("S(c)")));
  CHECK_THROWS(reinterpret_constant(m, 0, "c", 7));
}

TEST_CASE("enumeration counts match the brute-force oracle") {
  // Frozen from tests/oracles/count_models.py.
  Signature none;
  CHECK(count_models(none, {1, 1, 0}) == 2);
  CHECK(count_models(none, {2, 1, 0}) == 15);
  CHECK(count_models(none, {2, 2, 0}) == 70);
  CHECK(count_models(none, {3, 2, 0}) == 1768);
  Signature s1 = parse_signature_header("sig: constants c0; relations S/1;");
  CHECK(count_models(s1, {1, 2, 0}) == 20);
  CHECK(count_models(s1, {2, 2, 0}) == 1032);
  Signature r2 = parse_signature_header("sig: constants ; relations R/2;");
  CHECK(count_models(r2, {2, 2, 0}) == 4472);
  Signature s2 = parse_signature_header("sig: constants c0 c1; relations S/1;");
  CHECK(count_models(s2, {2, 2, 0}) == 2360);
  // Extra constants behave like declared ones.
  CHECK(count_models(s1, {2, 2, 1}) == count_models(s2, {2, 2, 0}));
}

TEST_CASE("enumerated models are adequate, distinct and ordered deterministically") {
  Signature s1 = parse_signature_header("sig: constants c0; relations S/1;");
  std::vector<Model> first, second;
  enumerate_models(s1, {2, 2, 0}, [&](const Model& m) {
    CHECK(check_adequate(m).ok());
    first.push_back(m);
    return true;
  });
  enumerate_models(s1, {2, 2, 0}, [&](const Model& m) {
    second.push_back(m);
    return second.size() < 10;
  });
  REQUIRE(second.size() == 10);
  for (std::size_t i = 0; i < second.size(); ++i) CHECK(first[i] == second[i]);
  for (std::size_t i = 0; i + 1 < first.size(); i += 37)
    for (std::size_t j = i + 1; j < first.size(); j += 11) CHECK_FALSE(first[i] == first[j]);
}

TEST_CASE("refute") {
  auto cm = refute(Q("T |- <>T"), {1, 1, 0});
  REQUIRE(cm);
  CHECK(cm->model.size() == 1);
  CHECK(cm->model.edges().empty());
  CHECK(validate_countermodel(*cm).ok());

  auto cb = refute(Q("A x . <>S(x) |- <>(A x . S(x))"), {2, 2, 0});
  REQUIRE(cb);
  CHECK(cb->model.size() == 2);
  CHECK(validate_countermodel(*cb).ok());

  CHECK_FALSE(refute(Q("<><>T |- <>T"), {3, 2, 0}));
  CHECK_FALSE(refute(Q("<>(A x . S(x)) |- A x . <>S(x)"), {2, 2, 0}));

  auto fv = refute(Q("S(x) |- S(y)"), {1, 2, 0});
  REQUIRE(fv);
  CHECK(validate_countermodel(*fv).ok());
  CHECK(fv->assignment.values.at("x") != fv->assignment.values.at("y"));
}

TEST_CASE("countermodel validation catches broken certificates") {
  auto cm = *refute(Q("T |- <>T"), {1, 1, 0});
  cm.model.add_edge(0, 0);
  CHECK_FALSE(validate_countermodel(cm).ok());
  auto cm2 = *refute(Q("T |- <>T"), {1, 1, 0});
  cm2.root = 3;
  CHECK_FALSE(validate_countermodel(cm2).ok());
}

TEST_CASE("property: forcing is invariant under restriction") {
  testgen::Gen gen(21);
  for (int i = 0; i < 300; ++i) {
    Model m = gen.model();
    Formula f = gen.formula();
    World r = gen.below(m.size());
    auto res = restrict_at(m, r);
    for (std::size_t nw = 0; nw < res.origin.size(); ++nw) {
      World old = res.origin[nw];
      Assignment g = gen.assignment(m, old);
      CHECK(forces(m, old, g, f) == forces(res.model, static_cast<World>(nw), g, f));
    }
  }
}

TEST_CASE("property: reinterpretation lemma") {
  testgen::Gen gen(22);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Model m = gen.model();
    Formula f = gen.formula();
    World w = gen.below(m.size());
    Assignment g = gen.assignment(m, w);
    for (const auto& x : f.free_vars()) {
      Formula fc = substitute(f, x, Term::constant("#c"));
      Model mc = reinterpret_constant(m, w, "#c", g(x));
      CHECK(forces(m, w, g, f) == forces(mc, 0, g, fc));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("property: alternative assignments agree off the free variables") {
  testgen::Gen gen(23);
  for (int i = 0; i < 300; ++i) {
    Model m = gen.model();
    Formula f = gen.formula();
    World w = gen.below(m.size());
    Assignment g = gen.assignment(m, w);
    Assignment h = gen.assignment(m, w);
    for (const auto& x : f.free_vars()) h.values[x] = g(x);
    CHECK(forces(m, w, g, f) == forces(m, w, h, f));
  }
}

TEST_CASE("property: substitution lemma") {
  testgen::Gen gen(24);
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    Model m = gen.model();
    Formula f = gen.formula();
    World w = gen.below(m.size());
    Assignment g = gen.assignment(m, w);
    std::string x = gen.config().variables[gen.below(3)];
    Term t = gen.term();
    if (!free_for(t, x, f)) continue;
    Assignment gt = g.with(x, value(m, w, g, t));
    CHECK(forces(m, w, gt, f) == forces(m, w, g, substitute(f, x, t)));
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("property: axioms hold on every enumerated model") {
  testgen::GenConfig cfg;
  cfg.constants = {"c0"};
  cfg.relations = {{"S", 1}};
  cfg.max_size = 4;
  testgen::Gen gen(25, cfg);
  std::vector<Sequent> axioms;
  for (int i = 0; i < 8; ++i) {
    Formula a = gen.formula(), b = gen.formula();
    axioms.push_back({a, Formula::top()});
    axioms.push_back({a, a});
    axioms.push_back({Formula::conj(a, b), a});
    axioms.push_back({Formula::conj(a, b), b});
    axioms.push_back({Formula::diamond(Formula::diamond(a)), Formula::diamond(a)});
    axioms.push_back({Formula::diamond(Formula::forall("x", a)),
                      Formula::forall("x", Formula::diamond(a))});
  }
  Signature s1 = gen.signature();
  enumerate_models(s1, {2, 2, 0}, [&](const Model& m) {
    for (World w = 0; w < m.size(); ++w) {
      for (Element d : m.world(w).domain) {
        Assignment g{w, {{"x", d}, {"y", *m.world(w).domain.rbegin()}}, d};
        for (const auto& s : axioms)
          if (forces(m, w, g, s.lhs) && !forces(m, w, g, s.rhs)) {
            FAIL(to_string(s));
          }
      }
    }
    return true;
  });
}
