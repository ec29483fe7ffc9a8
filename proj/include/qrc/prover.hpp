#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>

#include "qrc/calculus.hpp"

namespace qrc {

class BudgetExhausted : public Error {
 public:
  BudgetExhausted() : Error("proof search budget exhausted") {}
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    return s.lhs.hash() * 0x100000001b3ULL ^ s.rhs.hash();
  }
};

struct ProverOptions {
  // Maximum number of distinct sequents expanded before giving up.
  std::size_t budget = 4'000'000;
  // The memo table is cleared when it grows past this many entries.
  std::size_t cache_limit = 2'000'000;
};

struct ProverStats {
  std::size_t expansions = 0;
  std::size_t cache_hits = 0;
};

// Goal-directed backward search. The goal is decomposed with the right rules
// (T, &, ∀ via a fresh '#k' witness); atoms and diamonds on the right are
// matched against paths into the antecedent through &, and through ∀ with
// instantiating terms drawn from the named terms of the sequent. A diamond
// goal ◇ψ is closed by some ◇φ on such a path with φ ⊢ ψ or φ ⊢ ◇ψ. Every
// branch shrinks the goal or the modal depth of the antecedent, so the
// search terminates; modal depth is used as a necessary condition.
class Prover {
 public:
  explicit Prover(ProverOptions options = {});

  // Throws BudgetExhausted.
  bool derivable(const Sequent& s);
  // A checked-shape derivation when derivable; throws BudgetExhausted.
  std::optional<Derivation> derive(const Sequent& s);

  const ProverStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

  struct Step;
  struct Leaf;

 private:

  bool search(const Formula& lhs, const Formula& goal);
  bool search_prepared(const Formula& lhs, const Formula& goal);
  Derivation build(const Formula& lhs, const Formula& goal);
  Derivation build_prepared(const Formula& lhs, const Formula& goal);

  ProverOptions options_;
  ProverStats stats_;
  std::unordered_map<Sequent, bool, SequentHash> memo_;
};

// Spec-level entry point: a derivation of s within the budget, or nothing
// (either underivable or out of budget).
std::optional<Derivation> prove(const Sequent& s, std::size_t budget = ProverOptions{}.budget);

// Antecedent with binders renamed so that none repeats and none coincides
// with a free variable of the antecedent or of the goal. Identity when no
// renaming is needed.
Formula rename_binders_apart(const Formula& lhs, const Formula& goal);

}  // namespace qrc
