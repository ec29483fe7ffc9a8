#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qrc/calculus.hpp"
#include "qrc/semantics.hpp"
#include "qrc/termmodel.hpp"

namespace qrc {

enum class Status { Derivable, NotDerivable, Undecided };

const char* status_name(Status s);  // derivable | underivable | undecided

struct DeciderOptions {
  // Proof-search expansions shared by the YES side and the term-model oracle.
  std::size_t budget = ProverOptions{}.budget;
  // Bounds of the enumeration fallback, used only if the term model cannot
  // be built or fails validation.
  int max_worlds = 2;
  int max_domain = 3;
  // Term-model countermodels larger than this many worlds are replaced by
  // the first enumerated one within (minimize_worlds, minimize_domain), if
  // any. Zero disables.
  int minimize_worlds = 2;
  int minimize_domain = 2;
};

struct DeciderStats {
  std::size_t expansions = 0;
  std::size_t cache_hits = 0;
  std::size_t term_model_worlds = 0;
  std::size_t enumeration_rounds = 0;
  // 1 + D + ... + D^m, D = ◇-formulas of the closure, m = mdepth(lhs ∧ rhs);
  // saturates at UINT64_MAX.
  std::uint64_t world_ceiling = 0;
  std::size_t closure_diamonds = 0;
  std::string method;
};

struct Verdict {
  Status status = Status::Undecided;
  Sequent sequent;
  std::optional<Derivation> derivation;
  std::optional<Countermodel> countermodel;
  DeciderStats stats;
  std::string note;
};

// Free variables x become reserved constants '#x_x'.
std::string free_variable_constant(const std::string& x);

// Countermodel from M[⟨{φ^g}, {ψ^g}⟩]; nothing if the sequent is derivable
// or the result does not validate. Constants of sig missing from the
// sequent are sent to the least element of the root.
std::optional<Countermodel> term_countermodel(const Sequent& s, const Signature& sig,
                                              Entailment& oracle, DeciderStats* stats = nullptr);

// NotDerivable when mdepth(lhs) < mdepth(rhs), with a term-model
// countermodel; nothing otherwise.
std::optional<Verdict> mdepth_precheck(const Sequent& s, const Signature& sig,
                                       const DeciderOptions& options = {});

// Well-formedness against sig is checked first (throws SignatureError).
// Every certificate is re-validated before it is returned.
Verdict decide(const Sequent& s, const Signature& sig, const DeciderOptions& options = {});

std::uint64_t world_ceiling(const Sequent& s, std::size_t* diamonds = nullptr);

}  // namespace qrc
