#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/syntax.hpp"

namespace qrc::arith {

struct Term {
  enum class Kind { Var, Zero, One, Add, Mul } kind = Kind::Var;
  std::string name;
  std::vector<Term> kids;

  static Term var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  bool operator==(const Term&) const = default;
};

enum class Kind {
  Tau,          // τ(t)
  Atom,         // opaque Σ₁ predicate from a realization: name(t1, ..., tn)
  Eq, Le, Lt,   // t1 = t2, t1 ≤ t2, t1 < t2
  Or, And, Not, Implies,
  Exists, Forall,            // unbounded, variable in `var`
  BoundedExists, BoundedForall,  // ∃v ≤ t, bound in terms[0]
  Quote,        // ⌜φ⌝ as a term
  ConOf,        // Con_α
  BoxOf,        // □_α θ
  Theta,        // the schematic sentence variable θ
  ForallTheta,  // ∀θ
};

struct Formula {
  Kind kind = Kind::Tau;
  std::string var;           // quantified variable or atom name
  std::vector<Term> terms;   // arguments of atoms, bound of bounded quantifiers
  std::vector<Formula> kids;

  bool operator==(const Formula&) const = default;
};

Formula tau(Term t);
Formula eq(Term a, Term b);
Formula disj(Formula a, Formula b);
Formula conj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
Formula quote(Formula f);
Formula con_of(Formula alpha);
Formula box_of(Formula alpha, Formula target);
Formula theta();
Formula forall_theta(Formula body);

class ParseError : public qrc::Error {
 public:
  using qrc::Error::Error;
};

// Template grammar:
//   or    := and ('|' and)*          and := unary ('&' unary)*
//   unary := '~' unary | ('E'|'A') v ['<=' term] '.' or | '(' or ')'
//          | 'tau' '(' term ')' | name '(' terms ')' | term ('='|'<='|'<') term
//   term  := prod ('+' prod)*        prod := prim ('*' prim)*
//   prim  := '0' | '1' | variable | '#k' | '(' term ')'
// '#k' is the k-th argument of the relation, 'u' the axiom-code variable.
Formula parse(std::string_view text);

struct Template {
  int arity = 0;
  Formula body;
  std::vector<std::string> warnings;  // Σ₁-shape lint
};

class Realization {
 public:
  // One entry per line: "S/1 := template". Blank lines and '%' comments
  // are skipped. Throws ParseError with the line number.
  static Realization parse(std::string_view text);
  // Every relation of sig read as an opaque atom "S*(#1, ..., #n, u)".
  static Realization opaque(const Signature& sig);

  void add(const std::string& relation, Template t);
  bool has(const std::string& relation) const { return templates_.count(relation) > 0; }
  const Template& at(const std::string& relation) const;
  const std::map<std::string, Template>& templates() const { return templates_; }
  std::vector<std::string> warnings() const;

 private:
  std::map<std::string, Template> templates_;
};

// Warnings when the formula is not an ∃-block over a bounded matrix.
std::vector<std::string> sigma1_lint(const Formula& f);

// c<i> ↦ y<i>, x<i> ↦ z<i>; other names take the next free indices in
// sorted order.
struct IndexMap {
  std::map<std::string, std::string> constants;
  std::map<std::string, std::string> variables;
};
IndexMap index_map(const std::vector<qrc::Formula>& fs);

// Throws qrc::Error on a missing template or a template binding u, y<i>
// or z<i>.
Formula realize(const qrc::Formula& f, const Realization& r);
Formula realize(const qrc::Formula& f, const Realization& r, const IndexMap& idx);
// ∀θ ∀y⃗ ∀z⃗ (□_{ψ*}θ → □_{φ*}θ) for φ ⊢ ψ.
Formula arith_sequent(const Sequent& s, const Realization& r);

// Variables occurring free or bound, in order of first occurrence.
std::vector<std::string> variables(const Formula& f);
std::vector<std::string> free_variables(const Formula& f);

std::string render(const Term& t);
std::string render(const Formula& f);
// Structured rendering: nested JSON mirroring the tree.
std::string render_json(const Formula& f);

}  // namespace qrc::arith
