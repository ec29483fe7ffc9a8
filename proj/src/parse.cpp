#include "qrc/parse.hpp"

#include <cctype>
#include <sstream>

namespace qrc {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Reserved, LParen, RParen, Comma, Dot, Amp, Diamond, Turnstile,
                 Top, Forall, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Reserved: return "reserved constant";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Amp: return "'&'";
    case Tok::Diamond: return "'<>'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Top: return "'T'";
    case Tok::Forall: return "'A'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    auto simple = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(s.substr(i, n)), l, cl});
      advance(n);
    };
    if (c == '(') simple(Tok::LParen, 1);
    else if (c == ')') simple(Tok::RParen, 1);
    else if (c == ',') simple(Tok::Comma, 1);
    else if (c == '.') simple(Tok::Dot, 1);
    else if (c == '&') simple(Tok::Amp, 1);
    else if (s.substr(i, 2) == "<>") simple(Tok::Diamond, 2);
    else if (s.substr(i, 2) == "|-") simple(Tok::Turnstile, 2);
    else if (c == '#') {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j == i + 1) throw ParseError("'#' must be followed by a name", l, cl);
      simple(Tok::Reserved, j - i);
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      Tok t = word == "T" ? Tok::Top : word == "A" ? Tok::Forall : Tok::Ident;
      simple(t, j - i);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, Signature* infer)
      : toks_(lex(text)), sig_(sig), infer_(infer) {}

  Sequent sequent() {
    Formula l = formula();
    expect(Tok::Turnstile);
    Formula r = formula();
    expect(Tok::End);
    return {l, r};
  }

  Formula whole_formula() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  const Token& expect(Tok t) {
    if (peek().kind != t)
      fail(std::string("expected ") + describe(t) + ", found " + describe(peek().kind),
           peek());
    return next();
  }

  const Signature& sig() const { return infer_ ? *infer_ : sig_; }

  Formula formula() {
    Formula acc = unary();
    while (peek().kind == Tok::Amp) {
      next();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Diamond:
        next();
        return Formula::diamond(unary());
      case Tok::Forall: {
        next();
        const Token& v = peek();
        if (v.kind != Tok::Ident) fail("expected a variable after 'A'", v);
        next();
        if (sig().has_constant(v.text))
          fail("bound variable '" + v.text + "' clashes with a declared constant", v);
        if (sig().has_relation(v.text))
          fail("bound variable '" + v.text + "' clashes with a relation symbol", v);
        expect(Tok::Dot);
        return Formula::forall(v.text, formula());
      }
      case Tok::Top:
        next();
        return Formula::top();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident:
        return atom();
      default:
        fail(std::string("expected a formula, found ") + describe(t.kind), t);
    }
  }

  Formula atom() {
    const Token& name = next();
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      next();
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(term());
        }
      }
      expect(Tok::RParen);
    }
    int n = sig().arity(name.text);
    if (n < 0) {
      if (!infer_) fail("undeclared relation '" + name.text + "'", name);
      if (infer_->has_constant(name.text))
        fail("'" + name.text + "' is a constant, not a relation", name);
      infer_->add_relation(name.text, static_cast<int>(args.size()));
    } else if (n != static_cast<int>(args.size())) {
      fail("relation '" + name.text + "' has arity " + std::to_string(n) + ", got " +
               std::to_string(args.size()) + " arguments",
           name);
    }
    return Formula::pred(name.text, std::move(args));
  }

  Term term() {
    const Token& t = next();
    if (t.kind == Tok::Reserved) return Term::constant(t.text);
    if (t.kind != Tok::Ident) fail(std::string("expected a term, found ") + describe(t.kind), t);
    if (sig().has_relation(t.text))
      fail("relation symbol '" + t.text + "' used as a term", t);
    if (sig().has_constant(t.text)) return Term::constant(t.text);
    return Term::var(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  Signature* infer_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).whole_formula();
}

Sequent parse_sequent(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).sequent();
}

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig, nullptr).whole_term();
}

Sequent parse_sequent_infer(std::string_view text, Signature& sig) {
  return Parser(text, sig, &sig).sequent();
}

Formula parse_formula_infer(std::string_view text, Signature& sig) {
  return Parser(text, sig, &sig).whole_formula();
}

bool is_signature_header(std::string_view line) {
  return trim(line).substr(0, 4) == "sig:";
}

Signature parse_signature_header(std::string_view line) {
  std::string_view s = trim(line);
  if (s.substr(0, 4) != "sig:") throw ParseError("signature header must start with 'sig:'", 1, 1);
  s.remove_prefix(4);
  std::vector<std::string> constants;
  std::map<std::string, int> relations;
  std::string body(s);
  std::stringstream sections(body);
  std::string section;
  while (std::getline(sections, section, ';')) {
    std::istringstream words(section);
    std::string kind;
    if (!(words >> kind)) continue;
    std::string w;
    if (kind == "constants") {
      while (words >> w) constants.push_back(w);
    } else if (kind == "relations") {
      while (words >> w) {
        auto slash = w.find('/');
        if (slash == std::string::npos)
          throw ParseError("relation '" + w + "' needs an arity as Name/n", 1, 1);
        int arity = 0;
        try {
          std::size_t used = 0;
          arity = std::stoi(w.substr(slash + 1), &used);
          if (used != w.size() - slash - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw ParseError("bad arity in '" + w + "'", 1, 1);
        }
        if (!relations.emplace(w.substr(0, slash), arity).second)
          throw ParseError("duplicate relation '" + w.substr(0, slash) + "'", 1, 1);
      }
    } else {
      throw ParseError("unknown signature section '" + kind + "'", 1, 1);
    }
  }
  try {
    return Signature(std::move(constants), std::move(relations));
  } catch (const SignatureError& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

CorpusFile split_corpus(std::string_view text) {
  CorpusFile out;
  std::string all(text);
  std::istringstream in(all);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    if (is_signature_header(t)) {
      if (out.has_header || !out.items.empty())
        throw ParseError("signature header must be the first item", n, 1);
      try {
        out.sig = parse_signature_header(t);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), n, 1);
      }
      out.has_header = true;
      continue;
    }
    out.items.push_back({n, std::string(t)});
  }
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Term& t) { return t.name; }

namespace {

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parenthesize, std::string& out) {
  if (parenthesize) out += '(';
  print(f, out);
  if (parenthesize) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Top:
      out += 'T';
      return;
    case Kind::Pred:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i].name;
        }
        out += ')';
      }
      return;
    case Kind::And:
      print_operand(f.left(), f.left().is_forall(), out);
      out += " & ";
      print_operand(f.right(), f.right().is_and() || f.right().is_forall(), out);
      return;
    case Kind::Diamond:
      out += "<>";
      print_operand(f.body(), f.body().is_and() || f.body().is_forall(), out);
      return;
    case Kind::Forall:
      out += "A ";
      out += f.name();
      out += " . ";
      print(f.body(), out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const Sequent& s) { return to_string(s.lhs) + " |- " + to_string(s.rhs); }

}  // namespace qrc
