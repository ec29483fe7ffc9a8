#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrc/syntax.hpp"

namespace qrc {

// Primitive rules of the calculus.
//   TopI      φ ⊢ ⊤                    Id        φ ⊢ φ
//   AndEL     φ ∧ ψ ⊢ φ                AndER     φ ∧ ψ ⊢ ψ
//   AndI      φ ⊢ ψ, φ ⊢ χ  /  φ ⊢ ψ ∧ χ
//   Cut       φ ⊢ ψ, ψ ⊢ χ  /  φ ⊢ χ
//   Nec       φ ⊢ ψ  /  ◇φ ⊢ ◇ψ
//   TransAx   ◇◇φ ⊢ ◇φ                 BarcanAx  ◇∀x φ ⊢ ∀x ◇φ
//   ForallR   φ ⊢ ψ  /  φ ⊢ ∀x ψ                 x ∉ fv(φ)
//   ForallL   φ[x/t] ⊢ ψ  /  ∀x φ ⊢ ψ            t free for x in φ
//   TermInst  φ ⊢ ψ  /  φ[x/t] ⊢ ψ[x/t]          t free for x in φ and ψ
//   ConstGen  φ[x/c] ⊢ ψ[x/c]  /  φ ⊢ ψ          c not in φ nor ψ
enum class Rule {
  TopI, Id, AndEL, AndER, AndI, Cut, Nec, TransAx, BarcanAx,
  ForallR, ForallL, TermInst, ConstGen
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
bool is_leaf_rule(Rule r);
std::size_t premise_count(Rule r);

// Binding data named by the rule: ForallR/ForallL bind `var`; ForallL,
// TermInst and ConstGen carry the `term` (a constant for ConstGen).
struct Instantiation {
  std::optional<std::string> var;
  std::optional<Term> term;

  bool operator==(const Instantiation&) const = default;
};

struct Derivation {
  Rule rule = Rule::Id;
  Sequent conclusion;
  std::vector<Derivation> premises;
  Instantiation inst;

  std::size_t size() const;
  std::size_t depth() const;
};

struct Diagnostic {
  std::string path;  // premise indices from the root, e.g. "0.1"
  std::string message;
};

struct CheckResult {
  std::optional<Sequent> conclusion;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return conclusion.has_value(); }
  std::string summary() const;
};

// Re-checks every node, including side conditions and well-formedness over
// sig (reserved '#' constants are accepted as a conservative extension).
CheckResult check_derivation(const Derivation& d, const Signature& sig);

// Node constructors. They compute the conclusion from the premises and throw
// Error when the rule does not apply; check_derivation is the authority.
namespace build {
Derivation top_i(const Formula& lhs);
Derivation id(const Formula& f);
Derivation and_el(const Formula& conj);
Derivation and_er(const Formula& conj);
Derivation and_i(Derivation left, Derivation right);
Derivation cut(Derivation first, Derivation second);
Derivation nec(Derivation premise);
Derivation trans_ax(const Formula& inner);          // ◇◇φ ⊢ ◇φ for φ = inner
Derivation barcan_ax(const std::string& x, const Formula& body);
Derivation forall_r(Derivation premise, const std::string& x);
// Conclusion ∀x φ ⊢ ψ where the premise is φ[x/t] ⊢ ψ.
Derivation forall_l(Derivation premise, const std::string& x, const Formula& body,
                    const Term& t);
Derivation term_inst(Derivation premise, const std::string& x, const Term& t);
// Conclusion φ ⊢ ψ from a premise φ[x/c] ⊢ ψ[x/c].
Derivation const_gen(Derivation premise, const Sequent& conclusion, const std::string& x,
                     const std::string& c);
}  // namespace build

// Derived rules, elaborated into primitive rules along their textbook proofs.
enum class DerivedRule { SwapForalls, Instantiate, Rename, SubstituteRight, GeneralizeConstant };

const char* derived_rule_name(DerivedRule r);
std::optional<DerivedRule> derived_rule_from_name(const std::string& name);

// ∀x∀y φ ⊢ ∀y∀x φ
Derivation swap_foralls(const Formula& phi, const std::string& x, const std::string& y);
// ∀x φ ⊢ φ[x/t]            (t free for x in φ)
Derivation instantiate(const Formula& forall_phi, const Term& t);
// ∀x φ ⊢ ∀y φ[x/y]         (y free for x in φ, y ∉ fv(φ))
Derivation rename(const Formula& forall_phi, const std::string& y);
// from φ ⊢ ψ derive φ ⊢ ψ[x/t]   (x ∉ fv(φ), t free for x in ψ)
Derivation substitute_right(Derivation d, const std::string& x, const Term& t);
// from φ ⊢ ψ[x/c] derive φ ⊢ ∀x ψ   (x ∉ fv(φ), c not in φ nor ψ)
Derivation generalize_constant(Derivation d, const Formula& psi, const std::string& x,
                               const std::string& c);

// φ ⊢ φ' for alpha-variants φ, φ' (same shape, binders possibly renamed).
Derivation alpha_congruence(const Formula& from, const Formula& to);

}  // namespace qrc
