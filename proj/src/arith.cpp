#include "qrc/arith.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>
#include <set>

#include "json.hpp"

namespace qrc::arith {

Formula tau(Term t) { return {Kind::Tau, {}, {std::move(t)}, {}}; }
Formula eq(Term a, Term b) { return {Kind::Eq, {}, {std::move(a), std::move(b)}, {}}; }
Formula disj(Formula a, Formula b) { return {Kind::Or, {}, {}, {std::move(a), std::move(b)}}; }
Formula conj(Formula a, Formula b) { return {Kind::And, {}, {}, {std::move(a), std::move(b)}}; }
Formula implies(Formula a, Formula b) {
  return {Kind::Implies, {}, {}, {std::move(a), std::move(b)}};
}
Formula exists(std::string v, Formula body) { return {Kind::Exists, std::move(v), {}, {std::move(body)}}; }
Formula forall(std::string v, Formula body) { return {Kind::Forall, std::move(v), {}, {std::move(body)}}; }
Formula quote(Formula f) { return {Kind::Quote, {}, {}, {std::move(f)}}; }
Formula con_of(Formula alpha) { return {Kind::ConOf, {}, {}, {std::move(alpha)}}; }
Formula box_of(Formula alpha, Formula target) {
  return {Kind::BoxOf, {}, {}, {std::move(alpha), std::move(target)}};
}
Formula theta() { return {Kind::Theta, {}, {}, {}}; }
Formula forall_theta(Formula body) { return {Kind::ForallTheta, {}, {}, {std::move(body)}}; }

// ---------------------------------------------------------------- parsing

namespace {

struct Tok {
  enum class K { Ident, Placeholder, Num, Sym, End } k;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::K::Ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '#') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start + 1) throw ParseError("expected digits after '#' at column " + std::to_string(start + 1));
      out.push_back({Tok::K::Placeholder, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::K::Num, std::string(s.substr(start, i - start)), start});
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      i += 2;
      out.push_back({Tok::K::Sym, "<=", start});
    } else if (std::string_view("()|&~.=<+*,").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Tok::K::Sym, std::string(1, c), start});
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at column " +
                       std::to_string(start + 1));
    }
  }
  out.push_back({Tok::K::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(lex(s)) {}

  Formula run() {
    Formula f = parse_or();
    if (peek().k != Tok::K::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  bool is_sym(const char* s) const { return peek().k == Tok::K::Sym && peek().text == s; }
  bool accept(const char* s) {
    if (!is_sym(s)) return false;
    ++pos_;
    return true;
  }
  void expect(const char* s) {
    if (!accept(s)) fail(std::string("expected '") + s + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(peek().pos + 1));
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = disj(std::move(f), parse_and());
    return f;
  }
  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = conj(std::move(f), parse_unary());
    return f;
  }
  Formula parse_unary() {
    if (accept("~")) return {Kind::Not, {}, {}, {parse_unary()}};
    if (peek().k == Tok::K::Ident && (peek().text == "E" || peek().text == "A")) {
      bool ex = peek().text == "E";
      ++pos_;
      if (peek().k != Tok::K::Ident) fail("expected a variable");
      std::string v = peek().text;
      ++pos_;
      if (accept("<=")) {
        Term bound = parse_term();
        expect(".");
        return {ex ? Kind::BoundedExists : Kind::BoundedForall, v, {bound}, {parse_or()}};
      }
      expect(".");
      return {ex ? Kind::Exists : Kind::Forall, v, {}, {parse_or()}};
    }
    if (is_sym("(")) {
      std::size_t save = pos_;
      try {
        ++pos_;
        Formula f = parse_or();
        expect(")");
        if (!is_sym("=") && !is_sym("<=") && !is_sym("<") && !is_sym("+") && !is_sym("*"))
          return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
      return parse_relation();
    }
    if (peek().k == Tok::K::Ident && toks_[pos_ + 1].k == Tok::K::Sym &&
        toks_[pos_ + 1].text == "(") {
      std::string name = peek().text;
      pos_ += 2;
      std::vector<Term> args;
      if (!is_sym(")")) {
        args.push_back(parse_term());
        while (accept(",")) args.push_back(parse_term());
      }
      expect(")");
      if (name == "tau") {
        if (args.size() != 1) fail("tau takes one argument");
        return tau(args[0]);
      }
      return {Kind::Atom, name, std::move(args), {}};
    }
    return parse_relation();
  }
  Formula parse_relation() {
    Term a = parse_term();
    Kind k;
    if (accept("="))
      k = Kind::Eq;
    else if (accept("<="))
      k = Kind::Le;
    else if (accept("<"))
      k = Kind::Lt;
    else
      fail("expected '=', '<=' or '<'");
    Term b = parse_term();
    return {k, {}, {std::move(a), std::move(b)}, {}};
  }
  Term parse_term() {
    Term t = parse_prod();
    while (accept("+")) t = {Term::Kind::Add, {}, {std::move(t), parse_prod()}};
    return t;
  }
  Term parse_prod() {
    Term t = parse_prim();
    while (accept("*")) t = {Term::Kind::Mul, {}, {std::move(t), parse_prim()}};
    return t;
  }
  Term parse_prim() {
    const Tok& t = peek();
    if (accept("(")) {
      Term inner = parse_term();
      expect(")");
      return inner;
    }
    if (t.k == Tok::K::Num) {
      if (t.text != "0" && t.text != "1") fail("only the numerals 0 and 1 are terms");
      ++pos_;
      return {t.text == "0" ? Term::Kind::Zero : Term::Kind::One, {}, {}};
    }
    if (t.k == Tok::K::Ident || t.k == Tok::K::Placeholder) {
      if (t.text == "E" || t.text == "A" || t.text == "tau") fail("keyword used as a term");
      ++pos_;
      return Term::var(t.text);
    }
    fail("expected a term");
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

bool is_indexed(const std::string& v) {
  static const std::regex re("[yz][0-9]+");
  return std::regex_match(v, re);
}

void term_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  }
  for (const auto& k : t.kids) term_vars(k, out);
}

void collect_vars(const Formula& f, std::vector<std::string>& out, bool include_bound,
                  std::set<std::string>& bound) {
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& t : f.terms) {
    std::vector<std::string> vs;
    term_vars(t, vs);
    for (const auto& v : vs)
      if (include_bound || !bound.count(v)) add(v);
  }
  const bool binds = f.kind == Kind::Exists || f.kind == Kind::Forall ||
                     f.kind == Kind::BoundedExists || f.kind == Kind::BoundedForall;
  if (binds) {
    if (include_bound) add(f.var);
    bool fresh = bound.insert(f.var).second;
    for (const auto& k : f.kids) collect_vars(k, out, include_bound, bound);
    if (fresh) bound.erase(f.var);
    return;
  }
  for (const auto& k : f.kids) collect_vars(k, out, include_bound, bound);
}

Term subst_term(const Term& t, const std::map<std::string, std::string>& m) {
  if (t.kind == Term::Kind::Var) {
    auto it = m.find(t.name);
    return it == m.end() ? t : Term::var(it->second);
  }
  Term out = t;
  for (auto& k : out.kids) k = subst_term(k, m);
  return out;
}

Formula subst(const Formula& f, const std::map<std::string, std::string>& m) {
  Formula out = f;
  for (auto& t : out.terms) t = subst_term(t, m);
  for (auto& k : out.kids) k = subst(k, m);
  return out;
}

void lint(const Formula& f, bool in_matrix, bool negated, std::vector<std::string>& out) {
  switch (f.kind) {
    case Kind::Exists:
      if (in_matrix || negated)
        out.push_back("unbounded quantifier E " + f.var + " inside the bounded matrix");
      lint(f.kids[0], in_matrix, negated, out);
      return;
    case Kind::Forall:
      out.push_back("unbounded quantifier A " + f.var);
      lint(f.kids[0], true, negated, out);
      return;
    case Kind::Not:
      lint(f.kids[0], true, !negated, out);
      return;
    case Kind::Atom:
    case Kind::Tau:
      if (negated) out.push_back("negated Σ₁ atom " + render(f));
      return;
    default:
      for (const auto& k : f.kids) lint(k, true, negated, out);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::vector<std::string> sigma1_lint(const Formula& f) {
  std::vector<std::string> out;
  lint(f, false, false, out);
  return out;
}

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> bound;
  collect_vars(f, out, true, bound);
  return out;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> bound;
  collect_vars(f, out, false, bound);
  return out;
}

// ------------------------------------------------------------ realization

void Realization::add(const std::string& relation, Template t) {
  for (const auto& v : free_variables(t.body)) {
    if (v == "u") continue;
    if (v[0] == '#') {
      int k = std::stoi(v.substr(1));
      if (k < 1 || k > t.arity)
        throw qrc::Error("template for " + relation + " uses " + v + " but the relation has arity " +
                         std::to_string(t.arity));
      continue;
    }
    throw qrc::Error("template for " + relation + " has free variable " + v);
  }
  std::function<void(const Formula&)> check = [&](const Formula& f) {
    const bool binds = f.kind == Kind::Exists || f.kind == Kind::Forall ||
                       f.kind == Kind::BoundedExists || f.kind == Kind::BoundedForall;
    if (binds && (f.var == "u" || is_indexed(f.var)))
      throw qrc::Error("template for " + relation + " binds reserved variable " + f.var);
    for (const auto& k : f.kids) check(k);
  };
  check(t.body);
  t.warnings = sigma1_lint(t.body);
  templates_[relation] = std::move(t);
}

const Template& Realization::at(const std::string& relation) const {
  auto it = templates_.find(relation);
  if (it == templates_.end()) throw qrc::Error("no template for relation " + relation);
  return it->second;
}

std::vector<std::string> Realization::warnings() const {
  std::vector<std::string> out;
  for (const auto& [r, t] : templates_)
    for (const auto& w : t.warnings) out.push_back(r + ": " + w);
  return out;
}

Realization Realization::parse(std::string_view text) {
  Realization r;
  static const std::regex head(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*/\s*([0-9]+)\s*:=\s*(.*)$)");
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::smatch m;
    if (!std::regex_match(line, m, head))
      throw ParseError("line " + std::to_string(lineno) + ": expected 'Name/arity := template'");
    try {
      Template t{std::stoi(m[2]), arith::parse(m[3].str()), {}};
      r.add(m[1], std::move(t));
    } catch (const qrc::Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (end == text.size()) break;
  }
  return r;
}

Realization Realization::opaque(const Signature& sig) {
  Realization r;
  for (const auto& [name, n] : sig.relations()) {
    std::vector<Term> args;
    for (int i = 1; i <= n; ++i) args.push_back(Term::var("#" + std::to_string(i)));
    args.push_back(Term::var("u"));
    r.add(name, Template{n, {Kind::Atom, name + "*", std::move(args), {}}, {}});
  }
  return r;
}

namespace {

void qrc_names(const qrc::Formula& f, std::set<std::string>& cs, std::set<std::string>& vs) {
  switch (f.kind()) {
    case qrc::Kind::Top:
      return;
    case qrc::Kind::Pred:
      for (const auto& t : f.args()) (t.is_const() ? cs : vs).insert(t.name);
      return;
    case qrc::Kind::And:
      qrc_names(f.left(), cs, vs);
      qrc_names(f.right(), cs, vs);
      return;
    case qrc::Kind::Diamond:
      qrc_names(f.body(), cs, vs);
      return;
    case qrc::Kind::Forall:
      vs.insert(f.name());
      qrc_names(f.body(), cs, vs);
      return;
  }
}

std::map<std::string, std::string> assign_indices(const std::set<std::string>& names, char prefix,
                                                  char target) {
  static const std::regex indexed("[a-z]([0-9]+)");
  std::map<std::string, std::string> out;
  std::set<long> used;
  for (const auto& n : names) {
    std::smatch m;
    if (n.size() > 1 && n[0] == prefix && std::regex_match(n, m, indexed)) {
      long i = std::stol(m[1]);
      out[n] = std::string(1, target) + std::to_string(i);
      used.insert(i);
    }
  }
  long next = used.empty() ? 0 : *used.rbegin() + 1;
  for (const auto& n : names)
    if (!out.count(n)) out[n] = std::string(1, target) + std::to_string(next++);
  return out;
}

}  // namespace

IndexMap index_map(const std::vector<qrc::Formula>& fs) {
  std::set<std::string> cs, vs;
  for (const auto& f : fs) qrc_names(f, cs, vs);
  return {assign_indices(cs, 'c', 'y'), assign_indices(vs, 'x', 'z')};
}

Formula realize(const qrc::Formula& f, const Realization& r, const IndexMap& idx) {
  const Term u = Term::var("u");
  switch (f.kind()) {
    case qrc::Kind::Top:
      return tau(u);
    case qrc::Kind::Pred: {
      const Template& t = r.at(f.name());
      if (t.arity != static_cast<int>(f.args().size()))
        throw qrc::Error("template for " + f.name() + " has arity " + std::to_string(t.arity));
      std::map<std::string, std::string> m;
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        const auto& a = f.args()[i];
        m["#" + std::to_string(i + 1)] =
            a.is_const() ? idx.constants.at(a.name) : idx.variables.at(a.name);
      }
      return disj(subst(t.body, m), tau(u));
    }
    case qrc::Kind::And:
      return disj(realize(f.left(), r, idx), realize(f.right(), r, idx));
    case qrc::Kind::Diamond:
      return disj(tau(u), {Kind::Eq, {}, {u}, {quote(con_of(realize(f.body(), r, idx)))}});
    case qrc::Kind::Forall:
      return exists(idx.variables.at(f.name()), realize(f.body(), r, idx));
  }
  throw qrc::Error("unreachable");
}

Formula realize(const qrc::Formula& f, const Realization& r) {
  return realize(f, r, index_map({f}));
}

Formula arith_sequent(const Sequent& s, const Realization& r) {
  IndexMap idx = index_map({s.lhs, s.rhs});
  Formula lhs = realize(s.lhs, r, idx);
  Formula rhs = realize(s.rhs, r, idx);
  std::vector<std::pair<long, std::string>> ys, zs;
  for (const auto* f : {&lhs, &rhs})
    for (const auto& v : variables(*f)) {
      if (!is_indexed(v)) continue;
      auto& bucket = v[0] == 'y' ? ys : zs;
      std::pair<long, std::string> key{std::stol(v.substr(1)), v};
      if (std::find(bucket.begin(), bucket.end(), key) == bucket.end()) bucket.push_back(key);
    }
  std::sort(ys.begin(), ys.end());
  std::sort(zs.begin(), zs.end());
  Formula body = implies(box_of(rhs, theta()), box_of(lhs, theta()));
  for (auto it = zs.rbegin(); it != zs.rend(); ++it) body = forall(it->second, std::move(body));
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = forall(it->second, std::move(body));
  return forall_theta(std::move(body));
}

// -------------------------------------------------------------- rendering

namespace {

std::string subscripted(const std::string& v) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::size_t i = v.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(v[i - 1]))) --i;
  if (i == 0 || i == v.size()) return v;
  std::string out = v.substr(0, i);
  for (std::size_t j = i; j < v.size(); ++j) out += digits[v[j] - '0'];
  return out;
}

std::string atom_name(const std::string& n) {
  static const std::map<std::string, std::string> greek{
      {"alpha", "α"}, {"beta", "β"}, {"gamma", "γ"}, {"delta", "δ"}, {"pi", "π"},
      {"rho", "ρ"},   {"sigma", "σ"}, {"phi", "φ"},   {"chi", "χ"},   {"psi", "ψ"}};
  auto it = greek.find(n);
  return it == greek.end() ? n : it->second;
}

bool is_atomic(const Formula& f) {
  switch (f.kind) {
    case Kind::Tau:
    case Kind::Atom:
    case Kind::Quote:
    case Kind::ConOf:
    case Kind::BoxOf:
    case Kind::Theta:
    case Kind::Not:
      return true;
    default:
      return false;
  }
}

bool is_quantifier(const Formula& f) {
  return f.kind == Kind::Exists || f.kind == Kind::Forall || f.kind == Kind::BoundedExists ||
         f.kind == Kind::BoundedForall || f.kind == Kind::ForallTheta;
}

std::string operand(const Formula& f) {
  std::string s = render(f);
  return is_atomic(f) ? s : "(" + s + ")";
}

std::string scope(const Formula& f) {
  std::string s = render(f);
  return is_atomic(f) || is_quantifier(f) ? s : "(" + s + ")";
}

}  // namespace

std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return subscripted(t.name);
    case Term::Kind::Zero:
      return "0";
    case Term::Kind::One:
      return "1";
    case Term::Kind::Add:
    case Term::Kind::Mul: {
      auto side = [&](const Term& k) {
        bool paren = k.kind == Term::Kind::Add && t.kind == Term::Kind::Mul;
        return paren ? "(" + render(k) + ")" : render(k);
      };
      return side(t.kids[0]) + (t.kind == Term::Kind::Add ? " + " : "·") + side(t.kids[1]);
    }
  }
  return "?";
}

std::string render(const Formula& f) {
  switch (f.kind) {
    case Kind::Tau:
      return "τ(" + render(f.terms[0]) + ")";
    case Kind::Atom: {
      std::string s = atom_name(f.var) + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? "," : "") + render(f.terms[i]);
      return s + ")";
    }
    case Kind::Eq:
      if (f.terms.size() == 1) return render(f.terms[0]) + " = " + render(f.kids[0]);
      return render(f.terms[0]) + " = " + render(f.terms[1]);
    case Kind::Le:
      return render(f.terms[0]) + " ≤ " + render(f.terms[1]);
    case Kind::Lt:
      return render(f.terms[0]) + " < " + render(f.terms[1]);
    case Kind::Or:
      return operand(f.kids[0]) + " ∨ " + operand(f.kids[1]);
    case Kind::And:
      return operand(f.kids[0]) + " ∧ " + operand(f.kids[1]);
    case Kind::Implies:
      return operand(f.kids[0]) + " → " + operand(f.kids[1]);
    case Kind::Not:
      return "¬" + operand(f.kids[0]);
    case Kind::Exists:
      return "∃" + subscripted(f.var) + " " + scope(f.kids[0]);
    case Kind::Forall:
      return "∀" + subscripted(f.var) + " " + scope(f.kids[0]);
    case Kind::BoundedExists:
      return "∃" + subscripted(f.var) + "≤" + render(f.terms[0]) + " " + scope(f.kids[0]);
    case Kind::BoundedForall:
      return "∀" + subscripted(f.var) + "≤" + render(f.terms[0]) + " " + scope(f.kids[0]);
    case Kind::Quote:
      return "⌜" + render(f.kids[0]) + "⌝";
    case Kind::ConOf:
      return "Con_{" + render(f.kids[0]) + "}";
    case Kind::BoxOf:
      return "□_{" + render(f.kids[0]) + "}" + render(f.kids[1]);
    case Kind::Theta:
      return "θ";
    case Kind::ForallTheta:
      return "∀θ " + scope(f.kids[0]);
  }
  return "?";
}

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Tau: return "Tau";
    case Kind::Atom: return "Atom";
    case Kind::Eq: return "Eq";
    case Kind::Le: return "Le";
    case Kind::Lt: return "Lt";
    case Kind::Or: return "Or";
    case Kind::And: return "And";
    case Kind::Not: return "Not";
    case Kind::Implies: return "Implies";
    case Kind::Exists: return "Exists";
    case Kind::Forall: return "Forall";
    case Kind::BoundedExists: return "BoundedExists";
    case Kind::BoundedForall: return "BoundedForall";
    case Kind::Quote: return "Quote";
    case Kind::ConOf: return "ConOf";
    case Kind::BoxOf: return "BoxOf";
    case Kind::Theta: return "Theta";
    case Kind::ForallTheta: return "ForallTheta";
  }
  return "?";
}

nlohmann::ordered_json term_json(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return {{"var", t.name}};
    case Term::Kind::Zero:
      return {{"num", 0}};
    case Term::Kind::One:
      return {{"num", 1}};
    default:
      return {{"op", t.kind == Term::Kind::Add ? "+" : "*"},
              {"args", {term_json(t.kids[0]), term_json(t.kids[1])}}};
  }
}

nlohmann::ordered_json formula_json(const Formula& f) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(f.kind);
  if (!f.var.empty()) j[f.kind == Kind::Atom ? "name" : "var"] = f.var;
  if (!f.terms.empty()) {
    auto ts = nlohmann::ordered_json::array();
    for (const auto& t : f.terms) ts.push_back(term_json(t));
    j["terms"] = ts;
  }
  if (!f.kids.empty()) {
    auto ks = nlohmann::ordered_json::array();
    for (const auto& k : f.kids) ks.push_back(formula_json(k));
    j["args"] = ks;
  }
  return j;
}

}  // namespace

std::string render_json(const Formula& f) { return formula_json(f).dump(); }

}  // namespace qrc::arith
