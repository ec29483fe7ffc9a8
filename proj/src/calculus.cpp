#include "qrc/calculus.hpp"

#include <algorithm>
#include <sstream>

#include "qrc/fresh.hpp"

namespace qrc {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
  std::size_t premises;
};

constexpr RuleInfo kRules[] = {
    {Rule::TopI, "TopI", 0},         {Rule::Id, "Id", 0},
    {Rule::AndEL, "AndE-L", 0},      {Rule::AndER, "AndE-R", 0},
    {Rule::AndI, "AndI", 2},         {Rule::Cut, "Cut", 2},
    {Rule::Nec, "Nec", 1},           {Rule::TransAx, "TransAx", 0},
    {Rule::BarcanAx, "BarcanAx", 0}, {Rule::ForallR, "ForallR", 1},
    {Rule::ForallL, "ForallL", 1},   {Rule::TermInst, "TermInst", 1},
    {Rule::ConstGen, "ConstGen", 1},
};

const RuleInfo& info(Rule r) {
  for (const auto& i : kRules)
    if (i.rule == r) return i;
  throw Error("unknown rule");
}

}  // namespace

const char* rule_name(Rule r) { return info(r).name; }

std::optional<Rule> rule_from_name(const std::string& name) {
  for (const auto& i : kRules)
    if (name == i.name) return i.rule;
  return std::nullopt;
}

bool is_leaf_rule(Rule r) { return info(r).premises == 0; }
std::size_t premise_count(Rule r) { return info(r).premises; }

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::size_t Derivation::depth() const {
  std::size_t d = 0;
  for (const auto& p : premises) d = std::max(d, p.depth());
  return d + 1;
}

std::string CheckResult::summary() const {
  if (ok() && diagnostics.empty()) return "ok";
  std::ostringstream os;
  for (const auto& d : diagnostics)
    os << "at [" << (d.path.empty() ? "root" : d.path) << "]: " << d.message << '\n';
  return os.str();
}

// ---------------------------------------------------------------- checker

namespace {

class Checker {
 public:
  explicit Checker(const Signature& sig) : sig_(sig) {}

  void visit(const Derivation& d, const std::string& path) {
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      visit(d.premises[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i));
    check_node(d, path);
  }

  std::vector<Diagnostic> diagnostics;

 private:
  void report(const std::string& path, const std::string& msg) {
    diagnostics.push_back({path, msg});
  }

  void check_node(const Derivation& d, const std::string& path) {
    const std::string rn = rule_name(d.rule);
    auto bad = [&](const std::string& msg) { report(path, rn + ": " + msg); };
    for (const Formula* f : {&d.conclusion.lhs, &d.conclusion.rhs}) {
      try {
        check_well_formed(*f, sig_);
      } catch (const SignatureError& e) {
        bad(std::string("ill-formed conclusion: ") + e.what());
        return;
      }
    }
    if (d.premises.size() != premise_count(d.rule)) {
      bad("expects " + std::to_string(premise_count(d.rule)) + " premises, has " +
          std::to_string(d.premises.size()));
      return;
    }
    const Formula& lhs = d.conclusion.lhs;
    const Formula& rhs = d.conclusion.rhs;
    auto prem = [&](std::size_t i) -> const Sequent& { return d.premises[i].conclusion; };
    auto need = [&](bool cond, const std::string& msg) {
      if (!cond) bad(msg);
      return cond;
    };

    switch (d.rule) {
      case Rule::TopI:
        need(rhs.is_top(), "right-hand side must be T");
        break;
      case Rule::Id:
        need(lhs == rhs, "both sides must be identical");
        break;
      case Rule::AndEL:
        need(lhs.is_and() && lhs.left() == rhs, "expects φ & ψ |- φ");
        break;
      case Rule::AndER:
        need(lhs.is_and() && lhs.right() == rhs, "expects φ & ψ |- ψ");
        break;
      case Rule::AndI:
        if (!need(rhs.is_and(), "right-hand side must be a conjunction")) break;
        need(prem(0) == Sequent{lhs, rhs.left()}, "first premise must be φ |- ψ");
        need(prem(1) == Sequent{lhs, rhs.right()}, "second premise must be φ |- χ");
        break;
      case Rule::Cut:
        need(prem(0).lhs == lhs, "first premise must start from the conclusion's left side");
        need(prem(1).rhs == rhs, "second premise must end in the conclusion's right side");
        need(prem(0).rhs == prem(1).lhs, "premises must meet in the cut formula");
        break;
      case Rule::Nec:
        if (!need(lhs.is_diamond() && rhs.is_diamond(), "expects <>φ |- <>ψ")) break;
        need(prem(0) == Sequent{lhs.body(), rhs.body()}, "premise must be φ |- ψ");
        break;
      case Rule::TransAx:
        need(lhs.is_diamond() && lhs.body().is_diamond() && rhs.is_diamond() &&
                 lhs.body() == rhs,
             "expects <><>φ |- <>φ");
        break;
      case Rule::BarcanAx:
        need(lhs.is_diamond() && lhs.body().is_forall() && rhs.is_forall() &&
                 rhs.body().is_diamond() && lhs.body().name() == rhs.name() &&
                 lhs.body().body() == rhs.body().body(),
             "expects <>A x . φ |- A x . <>φ");
        break;
      case Rule::ForallR: {
        if (!need(rhs.is_forall(), "right-hand side must be universal")) break;
        const std::string& x = rhs.name();
        need(!d.inst.var || *d.inst.var == x, "instantiation variable does not match binder");
        need(!occurs_free(x, lhs), "side condition violated: " + x + " is free in " +
                                       to_string(lhs));
        need(prem(0) == Sequent{lhs, rhs.body()}, "premise must be φ |- ψ");
        break;
      }
      case Rule::ForallL: {
        if (!need(lhs.is_forall(), "left-hand side must be universal")) break;
        const std::string& x = lhs.name();
        need(!d.inst.var || *d.inst.var == x, "instantiation variable does not match binder");
        if (!need(d.inst.term.has_value(), "missing instantiating term")) break;
        const Term& t = *d.inst.term;
        if (!need(free_for(t, x, lhs.body()),
                  "side condition violated: " + t.name + " is not free for " + x))
          break;
        need(prem(0) == Sequent{substitute(lhs.body(), x, t), rhs},
             "premise must be φ[" + x + "/" + t.name + "] |- ψ");
        break;
      }
      case Rule::TermInst: {
        if (!need(d.inst.var && d.inst.term, "needs a variable and a term")) break;
        const std::string& x = *d.inst.var;
        const Term& t = *d.inst.term;
        const Sequent& p = prem(0);
        if (!need(free_for(t, x, p.lhs) && free_for(t, x, p.rhs),
                  "side condition violated: " + t.name + " is not free for " + x))
          break;
        need(Sequent{substitute(p.lhs, x, t), substitute(p.rhs, x, t)} == d.conclusion,
             "conclusion must be the premise with " + x + " replaced by " + t.name);
        break;
      }
      case Rule::ConstGen: {
        if (!need(d.inst.var && d.inst.term && d.inst.term->is_const(),
                  "needs a variable and a constant"))
          break;
        const std::string& x = *d.inst.var;
        const Term& c = *d.inst.term;
        need(!contains_constant(lhs, c.name) && !contains_constant(rhs, c.name),
             "side condition violated: " + c.name + " occurs in the conclusion");
        need(prem(0) == Sequent{substitute(lhs, x, c), substitute(rhs, x, c)},
             "premise must be the conclusion with " + x + " replaced by " + c.name);
        break;
      }
    }
  }

  const Signature& sig_;
};

}  // namespace

CheckResult check_derivation(const Derivation& d, const Signature& sig) {
  Checker c(sig);
  c.visit(d, "");
  CheckResult r;
  r.diagnostics = std::move(c.diagnostics);
  if (r.diagnostics.empty()) r.conclusion = d.conclusion;
  return r;
}

// ---------------------------------------------------------------- constructors

namespace build {

namespace {

Derivation node(Rule r, Sequent s, std::vector<Derivation> premises = {},
                Instantiation inst = {}) {
  Derivation d;
  d.rule = r;
  d.conclusion = std::move(s);
  d.premises = std::move(premises);
  d.inst = std::move(inst);
  return d;
}

}  // namespace

Derivation top_i(const Formula& lhs) { return node(Rule::TopI, {lhs, Formula::top()}); }

Derivation id(const Formula& f) { return node(Rule::Id, {f, f}); }

Derivation and_el(const Formula& conj) {
  if (!conj.is_and()) throw Error("AndE-L needs a conjunction");
  return node(Rule::AndEL, {conj, conj.left()});
}

Derivation and_er(const Formula& conj) {
  if (!conj.is_and()) throw Error("AndE-R needs a conjunction");
  return node(Rule::AndER, {conj, conj.right()});
}

Derivation and_i(Derivation left, Derivation right) {
  if (!(left.conclusion.lhs == right.conclusion.lhs))
    throw Error("AndI premises must share the left-hand side");
  Sequent s{left.conclusion.lhs, Formula::conj(left.conclusion.rhs, right.conclusion.rhs)};
  return node(Rule::AndI, std::move(s), {std::move(left), std::move(right)});
}

Derivation cut(Derivation first, Derivation second) {
  if (!(first.conclusion.rhs == second.conclusion.lhs))
    throw Error("Cut premises do not meet: " + to_string(first.conclusion) + " / " +
                to_string(second.conclusion));
  Sequent s{first.conclusion.lhs, second.conclusion.rhs};
  return node(Rule::Cut, std::move(s), {std::move(first), std::move(second)});
}

Derivation nec(Derivation premise) {
  Sequent s{Formula::diamond(premise.conclusion.lhs), Formula::diamond(premise.conclusion.rhs)};
  return node(Rule::Nec, std::move(s), {std::move(premise)});
}

Derivation trans_ax(const Formula& inner) {
  return node(Rule::TransAx,
              {Formula::diamond(Formula::diamond(inner)), Formula::diamond(inner)});
}

Derivation barcan_ax(const std::string& x, const Formula& body) {
  return node(Rule::BarcanAx, {Formula::diamond(Formula::forall(x, body)),
                               Formula::forall(x, Formula::diamond(body))});
}

Derivation forall_r(Derivation premise, const std::string& x) {
  if (occurs_free(x, premise.conclusion.lhs))
    throw Error("ForallR: " + x + " is free in " + to_string(premise.conclusion.lhs));
  Sequent s{premise.conclusion.lhs, Formula::forall(x, premise.conclusion.rhs)};
  Instantiation inst;
  inst.var = x;
  return node(Rule::ForallR, std::move(s), {std::move(premise)}, std::move(inst));
}

Derivation forall_l(Derivation premise, const std::string& x, const Formula& body,
                    const Term& t) {
  if (!(substitute(body, x, t) == premise.conclusion.lhs))
    throw Error("ForallL: premise does not start from the instance");
  Sequent s{Formula::forall(x, body), premise.conclusion.rhs};
  Instantiation inst;
  inst.var = x;
  inst.term = t;
  return node(Rule::ForallL, std::move(s), {std::move(premise)}, std::move(inst));
}

Derivation term_inst(Derivation premise, const std::string& x, const Term& t) {
  Sequent s{substitute(premise.conclusion.lhs, x, t), substitute(premise.conclusion.rhs, x, t)};
  Instantiation inst;
  inst.var = x;
  inst.term = t;
  return node(Rule::TermInst, std::move(s), {std::move(premise)}, std::move(inst));
}

Derivation const_gen(Derivation premise, const Sequent& conclusion, const std::string& x,
                     const std::string& c) {
  if (contains_constant(conclusion.lhs, c) || contains_constant(conclusion.rhs, c))
    throw Error("ConstGen: " + c + " occurs in the conclusion");
  Term ct = Term::constant(c);
  if (!(Sequent{substitute(conclusion.lhs, x, ct), substitute(conclusion.rhs, x, ct)} ==
        premise.conclusion))
    throw Error("ConstGen: premise is not the instance of the conclusion");
  Instantiation inst;
  inst.var = x;
  inst.term = ct;
  return node(Rule::ConstGen, conclusion, {std::move(premise)}, std::move(inst));
}

}  // namespace build

// ---------------------------------------------------------------- derived rules

namespace {

constexpr std::pair<DerivedRule, const char*> kDerived[] = {
    {DerivedRule::SwapForalls, "swap-foralls"},
    {DerivedRule::Instantiate, "inst"},
    {DerivedRule::Rename, "rename"},
    {DerivedRule::SubstituteRight, "subst-right"},
    {DerivedRule::GeneralizeConstant, "gen-const"},
};

}  // namespace

const char* derived_rule_name(DerivedRule r) {
  for (const auto& [k, n] : kDerived)
    if (k == r) return n;
  return "?";
}

std::optional<DerivedRule> derived_rule_from_name(const std::string& name) {
  for (const auto& [k, n] : kDerived)
    if (name == n) return k;
  return std::nullopt;
}

Derivation swap_foralls(const Formula& phi, const std::string& x, const std::string& y) {
  Derivation d = build::id(phi);
  d = build::forall_l(std::move(d), y, phi, Term::var(y));
  d = build::forall_l(std::move(d), x, Formula::forall(y, phi), Term::var(x));
  d = build::forall_r(std::move(d), x);
  return build::forall_r(std::move(d), y);
}

Derivation instantiate(const Formula& forall_phi, const Term& t) {
  if (!forall_phi.is_forall()) throw Error("instantiation needs a universal formula");
  const std::string& x = forall_phi.name();
  Formula inst = substitute(forall_phi.body(), x, t);
  return build::forall_l(build::id(inst), x, forall_phi.body(), t);
}

Derivation rename(const Formula& forall_phi, const std::string& y) {
  if (!forall_phi.is_forall()) throw Error("renaming needs a universal formula");
  if (y != forall_phi.name() && occurs_free(y, forall_phi.body()))
    throw Error("rename: " + y + " is free in " + to_string(forall_phi));
  return build::forall_r(instantiate(forall_phi, Term::var(y)), y);
}

Derivation substitute_right(Derivation d, const std::string& x, const Term& t) {
  if (occurs_free(x, d.conclusion.lhs))
    throw Error("subst-right: " + x + " is free in " + to_string(d.conclusion.lhs));
  if (!free_for(t, x, d.conclusion.rhs))
    throw Error("subst-right: " + t.name + " is not free for " + x);
  Formula all = Formula::forall(x, d.conclusion.rhs);
  Derivation gen = build::forall_r(std::move(d), x);
  return build::cut(std::move(gen), instantiate(all, t));
}

Derivation generalize_constant(Derivation d, const Formula& psi, const std::string& x,
                               const std::string& c) {
  const Formula phi = d.conclusion.lhs;
  if (occurs_free(x, phi)) throw Error("gen-const: " + x + " is free in " + to_string(phi));
  if (contains_constant(phi, c) || contains_constant(psi, c))
    throw Error("gen-const: " + c + " occurs in φ or ψ");
  if (!(substitute(psi, x, Term::constant(c)) == d.conclusion.rhs))
    throw Error("gen-const: premise must be φ |- ψ[" + x + "/" + c + "]");
  Derivation g = build::const_gen(std::move(d), {phi, psi}, x, c);
  return build::forall_r(std::move(g), x);
}

Derivation alpha_congruence(const Formula& from, const Formula& to) {
  if (from == to) return build::id(from);
  if (from.kind() != to.kind()) throw Error("alpha: formulas differ in shape");
  switch (from.kind()) {
    case Kind::Top:
    case Kind::Pred:
      throw Error("alpha: atoms differ: " + to_string(from) + " vs " + to_string(to));
    case Kind::And: {
      Derivation l = build::cut(build::and_el(from), alpha_congruence(from.left(), to.left()));
      Derivation r = build::cut(build::and_er(from), alpha_congruence(from.right(), to.right()));
      return build::and_i(std::move(l), std::move(r));
    }
    case Kind::Diamond:
      return build::nec(alpha_congruence(from.body(), to.body()));
    case Kind::Forall: {
      const std::string& x = from.name();
      const std::string& y = to.name();
      if (x == y) {
        Derivation inner = alpha_congruence(from.body(), to.body());
        Derivation l = build::forall_l(std::move(inner), x, from.body(), Term::var(x));
        return build::forall_r(std::move(l), x);
      }
      // Route through a variable fresh for both sides.
      std::string z = fresh_variable({from, to}, "_r");
      Formula from_z = substitute(from.body(), x, Term::var(z));
      Formula to_z = substitute(to.body(), y, Term::var(z));
      Derivation inner = alpha_congruence(from_z, to_z);
      Derivation l = build::forall_l(std::move(inner), x, from.body(), Term::var(z));
      Derivation gen = build::forall_r(std::move(l), z);
      return build::cut(std::move(gen), rename(Formula::forall(z, to_z), y));
    }
  }
  throw Error("alpha: unreachable");
}

}  // namespace qrc
