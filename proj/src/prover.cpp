#include "qrc/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qrc/fresh.hpp"

namespace qrc {

struct Prover::Step {
  enum class Kind { Left, Right, Forall } kind;
  std::string var;
};

// A Pred or Diamond subformula reachable from the antecedent through & and
// ∀. `binders` lists the ∀ variables crossed on the way, outermost first.
struct Prover::Leaf {
  std::vector<Step> path;
  std::vector<std::string> binders;
  Formula leaf;
};

namespace {

using Binding = std::map<std::string, Term>;

bool needs_renaming(const Formula& f, const std::set<std::string>& avoid,
                    std::set<std::string>& seen) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
      return false;
    case Kind::And:
      return needs_renaming(f.left(), avoid, seen) || needs_renaming(f.right(), avoid, seen);
    case Kind::Diamond:
      return needs_renaming(f.body(), avoid, seen);
    case Kind::Forall:
      if (avoid.count(f.name()) || !seen.insert(f.name()).second) return true;
      return needs_renaming(f.body(), avoid, seen);
  }
  return false;
}

Formula rename_walk(const Formula& f, const std::set<std::string>& avoid,
                    std::set<std::string>& seen, std::set<std::string>& used, int& counter) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
      return f;
    case Kind::And:
      return Formula::conj(rename_walk(f.left(), avoid, seen, used, counter),
                           rename_walk(f.right(), avoid, seen, used, counter));
    case Kind::Diamond:
      return Formula::diamond(rename_walk(f.body(), avoid, seen, used, counter));
    case Kind::Forall: {
      std::string x = f.name();
      Formula body = f.body();
      if (avoid.count(x) || seen.count(x)) {
        std::string y;
        do {
          y = "_b" + std::to_string(counter++);
        } while (used.count(y));
        used.insert(y);
        body = substitute(body, x, Term::var(y));
        x = y;
      }
      seen.insert(x);
      return Formula::forall(x, rename_walk(body, avoid, seen, used, counter));
    }
  }
  return f;
}

// Apply the binding along the path and return the instantiated leaf.
Formula walk_instance(Formula f, const std::vector<Prover::Step>& path, const Binding& b) {
  for (const auto& s : path) {
    switch (s.kind) {
      case Prover::Step::Kind::Left:
        f = f.left();
        break;
      case Prover::Step::Kind::Right:
        f = f.right();
        break;
      case Prover::Step::Kind::Forall:
        f = substitute(f.body(), s.var, b.at(s.var));
        break;
    }
  }
  return f;
}

Derivation build_path(const Formula& f, const std::vector<Prover::Step>& path, std::size_t i,
                      const Binding& b, Derivation tail) {
  if (i == path.size()) return tail;
  const auto& s = path[i];
  switch (s.kind) {
    case Prover::Step::Kind::Left:
      return build::cut(build::and_el(f), build_path(f.left(), path, i + 1, b, std::move(tail)));
    case Prover::Step::Kind::Right:
      return build::cut(build::and_er(f), build_path(f.right(), path, i + 1, b, std::move(tail)));
    case Prover::Step::Kind::Forall: {
      const Term& t = b.at(s.var);
      Formula inst = substitute(f.body(), s.var, t);
      return build::forall_l(build_path(inst, path, i + 1, b, std::move(tail)), s.var, f.body(),
                             t);
    }
  }
  throw Error("unreachable");
}

void leaves_of(const Formula& f, std::vector<Prover::Step>& path,
               std::vector<std::string>& binders, std::vector<Prover::Leaf>& out) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Pred:
    case Kind::Diamond:
      out.push_back({path, binders, f});
      return;
    case Kind::And:
      path.push_back({Prover::Step::Kind::Left, {}});
      leaves_of(f.left(), path, binders, out);
      path.back().kind = Prover::Step::Kind::Right;
      leaves_of(f.right(), path, binders, out);
      path.pop_back();
      return;
    case Kind::Forall:
      path.push_back({Prover::Step::Kind::Forall, f.name()});
      binders.push_back(f.name());
      leaves_of(f.body(), path, binders, out);
      binders.pop_back();
      path.pop_back();
      return;
  }
}

// Terms occurring free in the formulas: constants first, then variables.
std::vector<Term> named_terms(const Formula& a, const Formula& b) {
  std::set<std::string> cs, vs;
  for (const Formula* f : {&a, &b}) {
    cs.insert(f->constants().begin(), f->constants().end());
    vs.insert(f->free_vars().begin(), f->free_vars().end());
  }
  std::vector<Term> out;
  for (const auto& c : cs) out.push_back(Term::constant(c));
  for (const auto& v : vs) out.push_back(Term::var(v));
  return out;
}

// Bindings of the path binders that make the atom leaf equal to the goal.
std::optional<Binding> match_atom(const Prover::Leaf& leaf, const Formula& goal) {
  const Formula& a = leaf.leaf;
  if (!a.is_pred() || a.name() != goal.name() || a.args().size() != goal.args().size())
    return std::nullopt;
  auto bound = [&](const std::string& v) {
    return std::find(leaf.binders.begin(), leaf.binders.end(), v) != leaf.binders.end();
  };
  Binding b;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    const Term& s = a.args()[i];
    const Term& t = goal.args()[i];
    if (s.is_var() && bound(s.name)) {
      auto [it, fresh] = b.emplace(s.name, t);
      if (!fresh && !(it->second == t)) return std::nullopt;
    } else if (!(s == t)) {
      return std::nullopt;
    }
  }
  for (const auto& x : leaf.binders) b.emplace(x, Term::var(x));
  return b;
}

// All bindings of the binders that occur free in the diamond leaf; the rest
// keep their own name. Binder i may also take the name of an earlier binder.
void diamond_bindings(const Prover::Leaf& leaf, const std::vector<Term>& named,
                      const std::function<bool(const Binding&)>& visit) {
  const auto& xs = leaf.binders;
  Binding b;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == xs.size()) return visit(b);
    const std::string& x = xs[i];
    if (!occurs_free(x, leaf.leaf)) {
      b[x] = Term::var(x);
      return rec(i + 1);
    }
    std::vector<Term> cands = named;
    for (std::size_t j = 0; j <= i; ++j) {
      Term t = Term::var(xs[j]);
      if (std::find(cands.begin(), cands.end(), t) == cands.end()) cands.push_back(t);
    }
    for (const auto& t : cands) {
      b[x] = t;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
}

}  // namespace

Formula rename_binders_apart(const Formula& lhs, const Formula& goal) {
  std::set<std::string> avoid(lhs.free_vars().begin(), lhs.free_vars().end());
  avoid.insert(goal.free_vars().begin(), goal.free_vars().end());
  std::set<std::string> seen;
  if (!needs_renaming(lhs, avoid, seen)) return lhs;
  std::set<std::string> used = names_in(lhs);
  for (const auto& n : names_in(goal)) used.insert(n);
  seen.clear();
  int counter = 0;
  return rename_walk(lhs, avoid, seen, used, counter);
}

Prover::Prover(ProverOptions options) : options_(options) {}

bool Prover::derivable(const Sequent& s) { return search(s.lhs, s.rhs); }

std::optional<Derivation> Prover::derive(const Sequent& s) {
  if (!search(s.lhs, s.rhs)) return std::nullopt;
  return build(s.lhs, s.rhs);
}

bool Prover::search(const Formula& lhs, const Formula& goal) {
  Formula prepared = rename_binders_apart(lhs, goal);
  return search_prepared(prepared, goal);
}

bool Prover::search_prepared(const Formula& lhs, const Formula& goal) {
  if (lhs == goal || goal.is_top()) return true;
  if (lhs.mdepth() < goal.mdepth()) return false;

  Sequent key{lhs, goal};
  if (auto it = memo_.find(key); it != memo_.end()) {
    ++stats_.cache_hits;
    return it->second;
  }
  if (++stats_.expansions > options_.budget) throw BudgetExhausted();

  bool result = false;
  switch (goal.kind()) {
    case Kind::Top:
      result = true;
      break;
    case Kind::And:
      result = search_prepared(lhs, goal.left()) && search_prepared(lhs, goal.right());
      break;
    case Kind::Forall: {
      Term c = Term::constant(fresh_witness({lhs, goal}));
      result = search_prepared(lhs, substitute(goal.body(), goal.name(), c));
      break;
    }
    case Kind::Pred: {
      std::vector<Leaf> leaves;
      std::vector<Step> path;
      std::vector<std::string> binders;
      leaves_of(lhs, path, binders, leaves);
      for (const auto& leaf : leaves)
        if (match_atom(leaf, goal)) {
          result = true;
          break;
        }
      break;
    }
    case Kind::Diamond: {
      std::vector<Leaf> leaves;
      std::vector<Step> path;
      std::vector<std::string> binders;
      leaves_of(lhs, path, binders, leaves);
      std::vector<Term> named = named_terms(lhs, goal);
      for (const auto& leaf : leaves) {
        if (!leaf.leaf.is_diamond() || leaf.leaf.mdepth() < goal.mdepth()) continue;
        diamond_bindings(leaf, named, [&](const Binding& b) {
          Formula inner = walk_instance(lhs, leaf.path, b).body();
          result = search(inner, goal.body()) || search(inner, goal);
          return result;
        });
        if (result) break;
      }
      break;
    }
  }

  if (memo_.size() >= options_.cache_limit) memo_.clear();
  memo_.emplace(std::move(key), result);
  return result;
}

Derivation Prover::build(const Formula& lhs, const Formula& goal) {
  Formula prepared = rename_binders_apart(lhs, goal);
  if (prepared == lhs) return build_prepared(lhs, goal);
  return build::cut(alpha_congruence(lhs, prepared), build_prepared(prepared, goal));
}

Derivation Prover::build_prepared(const Formula& lhs, const Formula& goal) {
  if (lhs == goal) return build::id(lhs);
  switch (goal.kind()) {
    case Kind::Top:
      return build::top_i(lhs);
    case Kind::And:
      return build::and_i(build_prepared(lhs, goal.left()), build_prepared(lhs, goal.right()));
    case Kind::Forall: {
      const std::string& x = goal.name();
      const Formula& body = goal.body();
      const std::string c = fresh_witness({lhs, goal});
      Derivation d = build_prepared(lhs, substitute(body, x, Term::constant(c)));
      const bool x_in_body = occurs_free(x, body);
      if (!occurs_free(x, lhs)) {
        if (x_in_body) d = build::const_gen(std::move(d), {lhs, body}, x, c);
        return build::forall_r(std::move(d), x);
      }
      // x is free in the antecedent: generalize over a fresh variable, then
      // rename it back to x.
      std::string y = fresh_variable({lhs, goal}, "_g");
      Formula renamed = substitute(body, x, Term::var(y));
      if (x_in_body) d = build::const_gen(std::move(d), {lhs, renamed}, y, c);
      Derivation gen = build::forall_r(std::move(d), y);
      return build::cut(std::move(gen), rename(Formula::forall(y, renamed), x));
    }
    case Kind::Pred: {
      std::vector<Leaf> leaves;
      std::vector<Step> path;
      std::vector<std::string> binders;
      leaves_of(lhs, path, binders, leaves);
      for (const auto& leaf : leaves) {
        if (auto b = match_atom(leaf, goal))
          return build_path(lhs, leaf.path, 0, *b, build::id(goal));
      }
      break;
    }
    case Kind::Diamond: {
      std::vector<Leaf> leaves;
      std::vector<Step> path;
      std::vector<std::string> binders;
      leaves_of(lhs, path, binders, leaves);
      std::vector<Term> named = named_terms(lhs, goal);
      for (const auto& leaf : leaves) {
        if (!leaf.leaf.is_diamond() || leaf.leaf.mdepth() < goal.mdepth()) continue;
        std::optional<Derivation> found;
        diamond_bindings(leaf, named, [&](const Binding& b) {
          Formula inner = walk_instance(lhs, leaf.path, b).body();
          Derivation tail;
          if (search(inner, goal.body())) {
            tail = build::nec(build(inner, goal.body()));
          } else if (search(inner, goal)) {
            tail = build::cut(build::nec(build(inner, goal)), build::trans_ax(goal.body()));
          } else {
            return false;
          }
          found = build_path(lhs, leaf.path, 0, b, std::move(tail));
          return true;
        });
        if (found) return std::move(*found);
      }
      break;
    }
  }
  throw Error("internal: no derivation found for " + to_string(Sequent{lhs, goal}));
}

std::optional<Derivation> prove(const Sequent& s, std::size_t budget) {
  ProverOptions o;
  o.budget = budget;
  Prover p(o);
  try {
    return p.derive(s);
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

}  // namespace qrc
