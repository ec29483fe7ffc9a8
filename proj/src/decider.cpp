#include "qrc/decider.hpp"

#include <limits>

namespace qrc {

const char* status_name(Status s) {
  switch (s) {
    case Status::Derivable:
      return "derivable";
    case Status::NotDerivable:
      return "underivable";
    case Status::Undecided:
      return "undecided";
  }
  return "undecided";
}

std::string free_variable_constant(const std::string& x) { return "#x_" + x; }

namespace {

Formula close(const Formula& f) {
  Formula out = f;
  for (const auto& x : f.free_vars()) out = substitute(out, x, Term::constant(free_variable_constant(x)));
  return out;
}

std::set<std::string> base_constants(const Sequent& s) {
  std::set<std::string> C(s.lhs.constants().begin(), s.lhs.constants().end());
  C.insert(s.rhs.constants().begin(), s.rhs.constants().end());
  for (const auto& f : {s.lhs, s.rhs})
    for (const auto& x : f.free_vars()) C.insert(free_variable_constant(x));
  return C;
}

void absorb(DeciderStats& stats, const ProverStats& p) {
  stats.expansions += p.expansions;
  stats.cache_hits += p.cache_hits;
}

}  // namespace

std::uint64_t world_ceiling(const Sequent& s, std::size_t* diamonds) {
  FormulaSet phi{close(s.lhs), close(s.rhs)};
  std::set<std::string> C = base_constants(s);
  if (C.empty()) C.insert("#d");
  for (int j = 0; j < udepth(phi); ++j) C.insert("#w0_c" + std::to_string(j));
  std::uint64_t D = 0;
  for (const auto& f : closure(phi, C))
    if (f.is_diamond()) ++D;
  if (diamonds) *diamonds = D;
  const int m = mdepth(Formula::conj(s.lhs, s.rhs));
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1, power = 1;
  for (int i = 1; i <= m; ++i) {
    if (D != 0 && power > cap / D) return cap;
    power *= D;
    if (total > cap - power) return cap;
    total += power;
  }
  return total;
}

std::optional<Countermodel> term_countermodel(const Sequent& s, const Signature& sig,
                                              Entailment& oracle, DeciderStats* stats) {
  PairPM p{{close(s.lhs)}, {close(s.rhs)}};
  if (!oracle.consistent(p)) return std::nullopt;
  TermModel tm = build_term_model(p, base_constants(s), oracle);
  if (stats) stats->term_model_worlds = tm.model.size();

  Countermodel cm;
  cm.model = tm.model;
  cm.root = 0;
  cm.sequent = s;
  const Element least = *cm.model.world(0).domain.begin();
  cm.assignment = Assignment{0, {}, least};
  for (const auto& f : {s.lhs, s.rhs})
    for (const auto& x : f.free_vars())
      cm.assignment.values[x] = tm.element_of.at(free_variable_constant(x));
  for (World w = 0; w < cm.model.size(); ++w) {
    auto& cs = cm.model.world(w).constants;
    for (auto it = cs.begin(); it != cs.end();)
      it = is_reserved_constant(it->first) ? cs.erase(it) : std::next(it);
    for (const auto& c : sig.constants()) cs.emplace(c, least);
  }
  if (!validate_countermodel(cm).ok()) return std::nullopt;
  return cm;
}

namespace {

void minimize(Verdict& v, const DeciderOptions& options) {
  if (!v.countermodel || options.minimize_worlds <= 0 ||
      v.countermodel->model.size() <= options.minimize_worlds)
    return;
  ++v.stats.enumeration_rounds;
  if (auto small = refute(v.sequent, {options.minimize_worlds, options.minimize_domain, 0}))
    v.countermodel = std::move(small);
}

}  // namespace

std::optional<Verdict> mdepth_precheck(const Sequent& s, const Signature& sig,
                                       const DeciderOptions& options) {
  if (s.lhs.mdepth() >= s.rhs.mdepth()) return std::nullopt;
  Verdict v;
  v.sequent = s;
  v.stats.world_ceiling = world_ceiling(s, &v.stats.closure_diamonds);
  ProverOptions po;
  po.budget = options.budget;
  Entailment oracle(po);
  try {
    v.countermodel = term_countermodel(s, sig, oracle, &v.stats);
  } catch (const OracleFailure&) {
  }
  absorb(v.stats, oracle.stats());
  minimize(v, options);
  if (!v.countermodel) {
    for (int k = 1; k <= options.max_worlds && !v.countermodel; ++k) {
      ++v.stats.enumeration_rounds;
      v.countermodel = refute(s, {k, std::min(options.max_domain, k + 1), 0});
    }
  }
  v.stats.method = "mdepth-precheck";
  if (v.countermodel) {
    v.status = Status::NotDerivable;
  } else {
    v.status = Status::Undecided;
    v.note = "modal depth rules out a derivation but no countermodel was certified";
  }
  return v;
}

Verdict decide(const Sequent& s, const Signature& sig, const DeciderOptions& options) {
  check_well_formed(s.lhs, sig);
  check_well_formed(s.rhs, sig);
  if (auto v = mdepth_precheck(s, sig, options)) return *v;

  Verdict v;
  v.sequent = s;
  v.stats.world_ceiling = world_ceiling(s, &v.stats.closure_diamonds);
  ProverOptions po;
  po.budget = options.budget;
  Entailment oracle(po);
  Prover& prover = oracle.prover();

  bool exhausted = false;
  try {
    if (prover.derivable(s)) {
      Derivation d = *prover.derive(s);
      auto check = check_derivation(d, sig);
      absorb(v.stats, prover.stats());
      if (!check.ok() || !(*check.conclusion == s)) {
        v.status = Status::Undecided;
        v.note = "internal: derivation failed to re-check: " + check.summary();
        return v;
      }
      v.status = Status::Derivable;
      v.derivation = std::move(d);
      v.stats.method = "proof-search";
      return v;
    }
    v.countermodel = term_countermodel(s, sig, oracle, &v.stats);
    v.stats.method = "term-model";
    minimize(v, options);
  } catch (const BudgetExhausted&) {
    exhausted = true;
  } catch (const OracleFailure&) {
    exhausted = true;
  }
  absorb(v.stats, prover.stats());

  if (!v.countermodel) {
    v.stats.method = "enumeration";
    for (int k = 1; k <= options.max_worlds && !v.countermodel; ++k) {
      ++v.stats.enumeration_rounds;
      const int dom = std::min(options.max_domain,
                               static_cast<int>(base_constants(s).size()) +
                                   k * std::max(1, udepth(Formula::conj(s.lhs, s.rhs))));
      v.countermodel = refute(s, {k, std::max(1, dom), 0});
    }
  }
  if (v.countermodel) {
    v.status = Status::NotDerivable;
    return v;
  }
  v.status = Status::Undecided;
  v.note = exhausted ? "undecided at budget " + std::to_string(options.budget)
                     : "internal: no certificate found";
  return v;
}

}  // namespace qrc
