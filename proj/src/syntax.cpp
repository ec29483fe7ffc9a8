#include "qrc/syntax.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <sstream>

namespace qrc {

bool is_reserved_constant(const std::string& name) {
  return name.size() > 1 && name[0] == '#';
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (s == "A" || s == "T") return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), alnum);
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<std::string> constants,
                     std::map<std::string, int> relations)
    : constants_(std::move(constants)), relations_(std::move(relations)) {
  validate();
}

void Signature::validate() const {
  std::set<std::string> seen;
  for (const auto& c : constants_) {
    if (!valid_identifier(c))
      throw SignatureError("invalid constant name '" + c + "'");
    if (!seen.insert(c).second)
      throw SignatureError("duplicate constant '" + c + "'");
  }
  for (const auto& [r, n] : relations_) {
    if (!valid_identifier(r))
      throw SignatureError("invalid relation name '" + r + "'");
    if (n < 0) throw SignatureError("negative arity for relation '" + r + "'");
    if (seen.count(r))
      throw SignatureError("'" + r + "' declared both as constant and relation");
  }
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}

bool Signature::has_relation(const std::string& name) const {
  return relations_.count(name) != 0;
}

int Signature::arity(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? -1 : it->second;
}

void Signature::add_constant(const std::string& name) {
  if (has_constant(name)) return;
  constants_.push_back(name);
  validate();
}

void Signature::add_relation(const std::string& name, int arity) {
  auto it = relations_.find(name);
  if (it != relations_.end()) {
    if (it->second != arity)
      throw SignatureError("relation '" + name + "' redeclared with arity " +
                           std::to_string(arity));
    return;
  }
  relations_.emplace(name, arity);
  validate();
}

std::string Signature::to_header() const {
  std::ostringstream os;
  os << "sig:";
  if (!constants_.empty()) {
    os << " constants";
    for (const auto& c : constants_) os << ' ' << c;
    os << ';';
  }
  if (!relations_.empty()) {
    os << " relations";
    for (const auto& [r, n] : relations_) os << ' ' << r << '/' << n;
    os << ';';
  }
  return os.str();
}

// ---------------------------------------------------------------- Formula

struct Formula::Node {
  Kind kind = Kind::Top;
  std::string name;
  std::vector<Term> args;
  std::vector<Formula> kids;
  std::size_t size = 1;
  std::size_t hash = 0;
  int mdepth = 0;
  int udepth = 0;
  std::vector<std::string> fv;
  std::vector<std::string> consts;
};

Formula::Formula() : node_(top().node_) {}

Formula Formula::top() {
  static const std::shared_ptr<const Node> t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    n->hash = mix(0, 17);
    return n;
  }();
  return Formula(t);
}

Formula Formula::pred(std::string relation, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pred;
  n->hash = mix(mix(0, 31), std::hash<std::string>{}(relation));
  std::set<std::string> fv, cs;
  for (const auto& t : args) {
    n->hash = mix(n->hash, std::hash<std::string>{}(t.name) * 2 + (t.is_const() ? 1 : 0));
    (t.is_var() ? fv : cs).insert(t.name);
  }
  n->name = std::move(relation);
  n->args = std::move(args);
  n->fv.assign(fv.begin(), fv.end());
  n->consts.assign(cs.begin(), cs.end());
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->size = 1 + lhs.size() + rhs.size();
  n->hash = mix(mix(mix(0, 47), lhs.hash()), rhs.hash());
  n->mdepth = std::max(lhs.mdepth(), rhs.mdepth());
  n->udepth = std::max(lhs.udepth(), rhs.udepth());
  n->fv = sorted_union(lhs.free_vars(), rhs.free_vars());
  n->consts = sorted_union(lhs.constants(), rhs.constants());
  n->kids = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::diamond(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diamond;
  n->size = 1 + body.size();
  n->hash = mix(mix(0, 59), body.hash());
  n->mdepth = body.mdepth() + 1;
  n->udepth = body.udepth();
  n->fv = body.free_vars();
  n->consts = body.constants();
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->size = 1 + body.size();
  n->hash = mix(mix(mix(0, 71), std::hash<std::string>{}(var)), body.hash());
  n->mdepth = body.mdepth();
  n->udepth = body.udepth() + 1;
  n->fv = body.free_vars();
  n->fv.erase(std::remove(n->fv.begin(), n->fv.end(), var), n->fv.end());
  n->consts = body.constants();
  n->name = std::move(var);
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const Formula& Formula::body() const { return node_->kids.at(0); }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }
int Formula::mdepth() const { return node_->mdepth; }
int Formula::udepth() const { return node_->udepth; }
const std::vector<std::string>& Formula::free_vars() const { return node_->fv; }
const std::vector<std::string>& Formula::constants() const { return node_->consts; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash || node_->size != other.node_->size) return false;
  return compare(*this, other) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.args() != b.args()) return a.args() < b.args() ? -1 : 1;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (int c = compare(ka[i], kb[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------- operations

std::set<std::string> free_vars(const Formula& f) {
  return {f.free_vars().begin(), f.free_vars().end()};
}

bool occurs_free(const std::string& var, const Formula& f) {
  return std::binary_search(f.free_vars().begin(), f.free_vars().end(), var);
}

bool occurs_var(const std::string& var, const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
      return false;
    case Kind::Pred:
      return std::any_of(f.args().begin(), f.args().end(),
                         [&](const Term& t) { return t.is_var() && t.name == var; });
    case Kind::And:
      return occurs_var(var, f.left()) || occurs_var(var, f.right());
    case Kind::Diamond:
      return occurs_var(var, f.body());
    case Kind::Forall:
      return f.name() == var || occurs_var(var, f.body());
  }
  return false;
}

bool contains_constant(const Formula& f, const std::string& name) {
  return std::binary_search(f.constants().begin(), f.constants().end(), name);
}

namespace {

void collect_bound(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
      return;
    case Kind::And:
      collect_bound(f.left(), out);
      collect_bound(f.right(), out);
      return;
    case Kind::Diamond:
      collect_bound(f.body(), out);
      return;
    case Kind::Forall:
      out.insert(f.name());
      collect_bound(f.body(), out);
      return;
  }
}

Formula subst_unchecked(const Formula& f, const std::string& x, const Term& t) {
  if (!occurs_free(x, f)) return f;
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Pred: {
      std::vector<Term> args = f.args();
      for (auto& a : args)
        if (a.is_var() && a.name == x) a = t;
      return Formula::pred(f.name(), std::move(args));
    }
    case Kind::And:
      return Formula::conj(subst_unchecked(f.left(), x, t),
                           subst_unchecked(f.right(), x, t));
    case Kind::Diamond:
      return Formula::diamond(subst_unchecked(f.body(), x, t));
    case Kind::Forall:
      // x is free in f, so the binder is not x.
      return Formula::forall(f.name(), subst_unchecked(f.body(), x, t));
  }
  return f;
}

}  // namespace

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  collect_bound(f, out);
  return out;
}

bool free_for(const Term& t, const std::string& x, const Formula& f) {
  if (t.is_const()) return true;
  if (!occurs_free(x, f)) return true;
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Pred:
      return true;
    case Kind::And:
      return free_for(t, x, f.left()) && free_for(t, x, f.right());
    case Kind::Diamond:
      return free_for(t, x, f.body());
    case Kind::Forall:
      if (f.name() == t.name) return false;
      return free_for(t, x, f.body());
  }
  return true;
}

Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  if (!free_for(t, x, f))
    throw SubstitutionError(to_string(t) + " is not free for " + x + " in " +
                            to_string(f));
  return subst_unchecked(f, x, t);
}

int mdepth(const Formula& f) { return f.mdepth(); }
int udepth(const Formula& f) { return f.udepth(); }

int mdepth(const FormulaSet& fs) {
  int d = 0;
  for (const auto& f : fs) d = std::max(d, f.mdepth());
  return d;
}

int udepth(const FormulaSet& fs) {
  int d = 0;
  for (const auto& f : fs) d = std::max(d, f.udepth());
  return d;
}

namespace {

void close_into(const Formula& f, const std::set<std::string>& cs, FormulaSet& out) {
  if (out.count(f)) return;
  switch (f.kind()) {
    case Kind::Top:
      out.insert(f);
      return;
    case Kind::Pred:
      out.insert(f);
      out.insert(Formula::top());
      return;
    case Kind::And:
      out.insert(f);
      close_into(f.left(), cs, out);
      close_into(f.right(), cs, out);
      return;
    case Kind::Diamond:
      out.insert(f);
      close_into(f.body(), cs, out);
      return;
    case Kind::Forall:
      if (cs.empty())
        throw Error("closure of a universal formula needs a non-empty constant set: " +
                    to_string(f));
      out.insert(f);
      for (const auto& c : cs)
        close_into(subst_unchecked(f.body(), f.name(), Term::constant(c)), cs, out);
      return;
  }
}

}  // namespace

FormulaSet closure(const FormulaSet& gamma, const std::set<std::string>& constants) {
  FormulaSet out;
  for (const auto& g : gamma) close_into(g, constants, out);
  return out;
}

FormulaSet closure(const Formula& f, const std::set<std::string>& constants) {
  return closure(FormulaSet{f}, constants);
}

Formula conjunction(const FormulaSet& fs) {
  if (fs.empty()) return Formula::top();
  auto it = fs.begin();
  Formula acc = *it;
  for (++it; it != fs.end(); ++it) acc = Formula::conj(acc, *it);
  return acc;
}

void check_well_formed(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Pred: {
      int n = sig.arity(f.name());
      if (n < 0) throw SignatureError("undeclared relation '" + f.name() + "'");
      if (n != static_cast<int>(f.args().size()))
        throw SignatureError("relation '" + f.name() + "' has arity " +
                             std::to_string(n) + " but is applied to " +
                             std::to_string(f.args().size()) + " terms");
      for (const auto& t : f.args()) {
        if (t.is_const() && !sig.has_constant(t.name) && !is_reserved_constant(t.name))
          throw SignatureError("undeclared constant '" + t.name + "'");
        if (t.is_var() && sig.has_constant(t.name))
          throw SignatureError("variable '" + t.name + "' clashes with a constant");
      }
      return;
    }
    case Kind::And:
      check_well_formed(f.left(), sig);
      check_well_formed(f.right(), sig);
      return;
    case Kind::Diamond:
      check_well_formed(f.body(), sig);
      return;
    case Kind::Forall:
      if (sig.has_constant(f.name()))
        throw SignatureError("bound variable '" + f.name() + "' clashes with a constant");
      check_well_formed(f.body(), sig);
      return;
  }
}

}  // namespace qrc
