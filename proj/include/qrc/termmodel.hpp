#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qrc/prover.hpp"
#include "qrc/semantics.hpp"

namespace qrc {

class OracleFailure : public Error {
 public:
  using Error::Error;
};

struct PairPM {
  FormulaSet pos;
  FormulaSet neg;

  bool operator==(const PairPM&) const = default;
  std::string to_string() const;
};

struct TermWorld {
  PairPM pair;
  std::set<std::string> constants;  // M_w
};

// Derivability oracle: Γ ⊢ φ iff the conjunction of Γ derives φ. Backed by
// the complete proof search, with its memo shared across calls.
class Entailment {
 public:
  explicit Entailment(ProverOptions options = {}) : prover_(options) {}
  // Throws OracleFailure when the search budget runs out.
  bool operator()(const FormulaSet& gamma, const Formula& f);
  bool consistent(const PairPM& p);
  const ProverStats& stats() const { return prover_.stats(); }
  Prover& prover() { return prover_; }

 private:
  Prover prover_;
};

bool entails(const FormulaSet& gamma, const Formula& f);

struct Saturated {
  std::set<std::string> constants;  // D
  PairPM pair;                      // q
};

// Extends C by udepth(Φ) fresh constants named prefix0, prefix1, ... and
// places every formula of Cl_D(Φ), in canonical order, positively iff
// p⁺ ⊢ φ. Throws Error when p is inconsistent.
Saturated lindenbaum(const PairPM& p, const FormulaSet& phi, const std::set<std::string>& C,
                     Entailment& oracle, const std::string& prefix = "#n");

bool hatR(const PairPM& p, const PairPM& q);

// Child world for ◇φ ∈ p⁺, seeded with ⟨{φ}, {δ, ◇δ | ◇δ ∈ p⁻} ∪ {◇φ}⟩.
TermWorld pair_existence(const TermWorld& p, const Formula& dphi, const FormulaSet& phi,
                         Entailment& oracle, const std::string& prefix);

struct TermModel {
  Model model;
  std::vector<TermWorld> worlds;             // indexed like the model's worlds
  std::vector<std::pair<World, World>> tree;  // construction edges before closure
  std::set<std::string> base_constants;      // C
  std::map<std::string, Element> element_of;
  FormulaSet phi;                            // p⁺ ∪ p⁻
};

// M[p] over the constants C (C must be nonempty when p has a ∀). Fresh
// witnesses are named '#w<k>_c<j>' after the world k that introduced them.
TermModel build_term_model(const PairPM& p, const std::set<std::string>& C, Entailment& oracle);
TermModel build_term_model(const PairPM& p, const std::set<std::string>& C);

struct TruthLemmaViolation {
  World world;
  std::string formula;
  std::string assignment;
  bool forced;
  bool member;
};

struct TruthLemmaReport {
  std::size_t checked = 0;
  std::vector<TruthLemmaViolation> violations;
  bool ok() const { return violations.empty(); }
};

// For every world w and every φ ∈ Cl_{M_w}(p): M[p], w ⊩^g φ' iff φ ∈ w⁺,
// where φ' replaces the constants outside C by variables and g sends them to
// the corresponding elements.
TruthLemmaReport truth_lemma_check(const TermModel& tm);

std::string render_term_model(const TermModel& tm);

}  // namespace qrc
