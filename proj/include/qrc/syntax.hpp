#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class SubstitutionError : public Error {
 public:
  using Error::Error;
};

// Constants whose name starts with '#' live outside every user signature.
// They are the fresh witnesses introduced by proof search, the decider and
// the term-model construction.
bool is_reserved_constant(const std::string& name);

// Finite signature: ordered constants plus relation symbols with arities.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> constants,
            std::map<std::string, int> relations);

  const std::vector<std::string>& constants() const { return constants_; }
  const std::map<std::string, int>& relations() const { return relations_; }

  bool has_constant(const std::string& name) const;
  bool has_relation(const std::string& name) const;
  // -1 when the relation is undeclared.
  int arity(const std::string& name) const;

  void add_constant(const std::string& name);
  void add_relation(const std::string& name, int arity);

  // Header line accepted by the parser: "sig: constants c0 c1; relations S/1;"
  std::string to_header() const;

  bool operator==(const Signature&) const = default;

 private:
  void validate() const;

  std::vector<std::string> constants_;
  std::map<std::string, int> relations_;
};

struct Term {
  enum class Kind : std::uint8_t { Var, Const };

  Kind kind = Kind::Var;
  std::string name;

  static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_const() const { return kind == Kind::Const; }

  auto operator<=>(const Term&) const = default;
};

enum class Kind : std::uint8_t { Top = 0, Pred = 1, And = 2, Diamond = 3, Forall = 4 };

// Immutable strictly positive formula. Nodes are shared; copying is cheap.
// Equality is exact syntax (no alpha-equivalence).
class Formula {
 public:
  Formula();  // ⊤

  static Formula top();
  static Formula pred(std::string relation, std::vector<Term> args);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula diamond(Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const;
  bool is_top() const { return kind() == Kind::Top; }
  bool is_pred() const { return kind() == Kind::Pred; }
  bool is_and() const { return kind() == Kind::And; }
  bool is_diamond() const { return kind() == Kind::Diamond; }
  bool is_forall() const { return kind() == Kind::Forall; }

  // Relation name for Pred, bound variable for Forall, empty otherwise.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Formula& left() const;
  const Formula& right() const;
  // Body of ◇ or ∀.
  const Formula& body() const;

  std::size_t size() const;
  std::size_t hash() const;
  int mdepth() const;
  int udepth() const;
  // Sorted, duplicate-free.
  const std::vector<std::string>& free_vars() const;
  const std::vector<std::string>& constants() const;

  bool operator==(const Formula& other) const;
  // Canonical total order: size, then constructor tag, then names, then
  // children left to right.
  bool operator<(const Formula& other) const { return compare(*this, other) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::set<Formula>;

struct Sequent {
  Formula lhs;
  Formula rhs;

  bool operator==(const Sequent&) const = default;
  bool operator<(const Sequent& o) const {
    int c = Formula::compare(lhs, o.lhs);
    return c != 0 ? c < 0 : Formula::compare(rhs, o.rhs) < 0;
  }
};

std::set<std::string> free_vars(const Formula& f);
bool occurs_free(const std::string& var, const Formula& f);
// Any occurrence, free or bound, of the name as a variable.
bool occurs_var(const std::string& var, const Formula& f);
bool contains_constant(const Formula& f, const std::string& name);
// Variables bound somewhere in f (each binder name once).
std::set<std::string> bound_vars(const Formula& f);

bool free_for(const Term& t, const std::string& x, const Formula& f);
// φ[x/t]; throws SubstitutionError when t is not free for x in φ.
Formula substitute(const Formula& f, const std::string& x, const Term& t);

int mdepth(const Formula& f);
int udepth(const Formula& f);
int mdepth(const FormulaSet& fs);  // 0 for the empty set
int udepth(const FormulaSet& fs);

// Cl_C(Γ). Throws Error when C is empty and some formula contains ∀.
FormulaSet closure(const FormulaSet& gamma, const std::set<std::string>& constants);
FormulaSet closure(const Formula& f, const std::set<std::string>& constants);

// Conjunction of the set in canonical order; ⊤ for the empty set.
Formula conjunction(const FormulaSet& fs);

// Relations and constants used by f against sig; throws SignatureError on
// undeclared relations, arity mismatches or undeclared non-reserved constants.
void check_well_formed(const Formula& f, const Signature& sig);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Sequent& s);

}  // namespace qrc
