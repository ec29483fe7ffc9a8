#include "qrc/termmodel.hpp"

#include <deque>
#include <sstream>

namespace qrc {

std::string PairPM::to_string() const {
  auto list = [](const FormulaSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& f : s) {
      out += (first ? "" : "; ") + qrc::to_string(f);
      first = false;
    }
    return out + "}";
  };
  return "<" + list(pos) + ", " + list(neg) + ">";
}

bool Entailment::operator()(const FormulaSet& gamma, const Formula& f) {
  try {
    return prover_.derivable({conjunction(gamma), f});
  } catch (const BudgetExhausted&) {
    throw OracleFailure("derivability oracle ran out of budget on " +
                        to_string(Sequent{conjunction(gamma), f}));
  }
}

bool Entailment::consistent(const PairPM& p) {
  for (const auto& d : p.neg)
    if ((*this)(p.pos, d)) return false;
  return true;
}

bool entails(const FormulaSet& gamma, const Formula& f) {
  Entailment e;
  return e(gamma, f);
}

Saturated lindenbaum(const PairPM& p, const FormulaSet& phi, const std::set<std::string>& C,
                     Entailment& oracle, const std::string& prefix) {
  if (!oracle.consistent(p)) throw Error("lindenbaum: inconsistent pair " + p.to_string());
  Saturated out;
  out.constants = C;
  const int n = udepth(phi);
  for (int j = 0; j < n; ++j) {
    std::string c = prefix + std::to_string(j);
    if (C.count(c)) throw Error("lindenbaum: fresh constant " + c + " already in use");
    out.constants.insert(c);
  }
  for (const auto& f : closure(phi, out.constants)) {
    if (oracle(p.pos, f))
      out.pair.pos.insert(f);
    else
      out.pair.neg.insert(f);
  }
  return out;
}

bool hatR(const PairPM& p, const PairPM& q) {
  for (const auto& f : p.neg)
    if (f.is_diamond() && (!q.neg.count(f.body()) || !q.neg.count(f))) return false;
  for (const auto& f : p.pos)
    if (f.is_diamond() && q.neg.count(f)) return true;
  return false;
}

TermWorld pair_existence(const TermWorld& p, const Formula& dphi, const FormulaSet& phi,
                         Entailment& oracle, const std::string& prefix) {
  if (!dphi.is_diamond() || !p.pair.pos.count(dphi))
    throw Error("pair_existence: " + to_string(dphi) + " is not a positive diamond of the world");
  PairPM seed;
  seed.pos.insert(dphi.body());
  seed.neg.insert(dphi);
  for (const auto& f : p.pair.neg)
    if (f.is_diamond()) {
      seed.neg.insert(f);
      seed.neg.insert(f.body());
    }
  Saturated s = lindenbaum(seed, phi, p.constants, oracle, prefix);
  return {std::move(s.pair), std::move(s.constants)};
}

TermModel build_term_model(const PairPM& p, const std::set<std::string>& C_in,
                           Entailment& oracle) {
  TermModel tm;
  std::set<std::string> C = C_in;
  if (C.empty()) C.insert("#d");
  tm.base_constants = C;
  tm.phi = p.pos;
  tm.phi.insert(p.neg.begin(), p.neg.end());
  for (const auto& f : tm.phi)
    if (!f.free_vars().empty())
      throw Error("build_term_model: formula " + to_string(f) + " is not closed");

  auto root = lindenbaum(p, tm.phi, C, oracle, "#w0_c");
  tm.worlds.push_back({std::move(root.pair), std::move(root.constants)});
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t w = queue.front();
    queue.pop_front();
    std::vector<Formula> diamonds;
    for (const auto& f : tm.worlds[w].pair.pos)
      if (f.is_diamond()) diamonds.push_back(f);
    for (const auto& d : diamonds) {
      std::size_t k = tm.worlds.size();
      std::string prefix = "#w" + std::to_string(k) + "_c";
      TermWorld child = pair_existence(tm.worlds[w], d, tm.phi, oracle, prefix);
      tm.worlds.push_back(std::move(child));
      tm.tree.emplace_back(static_cast<World>(w), static_cast<World>(k));
      queue.push_back(k);
    }
  }

  // Elements: C first, then fresh witnesses in order of introduction.
  for (const auto& c : C) tm.element_of.emplace(c, static_cast<Element>(tm.element_of.size()));
  for (const auto& tw : tm.worlds)
    for (const auto& c : tw.constants)
      tm.element_of.emplace(c, static_cast<Element>(tm.element_of.size()));

  for (const auto& tw : tm.worlds) {
    WorldData wd;
    for (const auto& c : tw.constants) wd.domain.insert(tm.element_of.at(c));
    for (const auto& c : C) wd.constants[c] = tm.element_of.at(c);
    for (const auto& f : tw.pair.pos) {
      if (!f.is_pred()) continue;
      Tuple t;
      for (const auto& a : f.args()) t.push_back(tm.element_of.at(a.name));
      wd.relations[f.name()].insert(t);
    }
    tm.model.add_world(std::move(wd));
  }
  for (const auto& [a, b] : tm.tree) tm.model.add_edge(a, b);
  tm.model.transitive_closure();
  for (const auto& [c, e] : tm.element_of) tm.model.element_labels[e] = c;
  return tm;
}

TermModel build_term_model(const PairPM& p, const std::set<std::string>& C) {
  Entailment oracle;
  return build_term_model(p, C, oracle);
}

namespace {

std::string abstract_name(const std::string& c) { return "%" + c; }

Formula abstract_constants(const Formula& f, const std::set<std::string>& keep) {
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Pred: {
      std::vector<Term> args;
      for (const auto& t : f.args())
        args.push_back(t.is_const() && !keep.count(t.name) ? Term::var(abstract_name(t.name)) : t);
      return Formula::pred(f.name(), std::move(args));
    }
    case Kind::And:
      return Formula::conj(abstract_constants(f.left(), keep), abstract_constants(f.right(), keep));
    case Kind::Diamond:
      return Formula::diamond(abstract_constants(f.body(), keep));
    case Kind::Forall:
      return Formula::forall(f.name(), abstract_constants(f.body(), keep));
  }
  return f;
}

}  // namespace

TruthLemmaReport truth_lemma_check(const TermModel& tm) {
  TruthLemmaReport rep;
  for (World w = 0; w < tm.model.size(); ++w) {
    const TermWorld& tw = tm.worlds[w];
    for (const auto& f : closure(tm.phi, tw.constants)) {
      Formula a = abstract_constants(f, tm.base_constants);
      Assignment g = default_assignment(tm.model, w);
      std::string shown;
      for (const auto& c : f.constants())
        if (!tm.base_constants.count(c)) {
          g.values[abstract_name(c)] = tm.element_of.at(c);
          shown += (shown.empty() ? "" : ", ") + abstract_name(c) + "=" + c;
        }
      bool forced = forces(tm.model, w, g, a);
      bool member = tw.pair.pos.count(f) > 0;
      ++rep.checked;
      if (forced != member) rep.violations.push_back({w, to_string(a), shown, forced, member});
    }
  }
  return rep;
}

std::string render_term_model(const TermModel& tm) {
  std::ostringstream out;
  for (World w = 0; w < tm.model.size(); ++w)
    out << "world " << w << ": " << tm.worlds[w].pair.to_string() << "\n";
  out << render_model(tm.model);
  return out.str();
}

}  // namespace qrc
