#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qrc/syntax.hpp"

namespace qrc {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

// Grammar:
//   formula := unary ('&' unary)*          left associative, lowest precedence
//   unary   := '<>' unary | 'A' x '.' formula | 'T' | Rel ['(' terms ')']
//            | '(' formula ')'
//   sequent := formula '|-' formula
// Identifiers declared as constants are constants, '#name' tokens are
// reserved constants, and every other identifier in term position is a
// variable. 'A x .' extends as far right as possible.
Formula parse_formula(std::string_view text, const Signature& sig);
Sequent parse_sequent(std::string_view text, const Signature& sig);
Term parse_term(std::string_view text, const Signature& sig);

// Same grammar, but undeclared relations are added to *sig with the arity of
// their first use.
Sequent parse_sequent_infer(std::string_view text, Signature& sig);
Formula parse_formula_infer(std::string_view text, Signature& sig);

// "sig: constants c0 c1; relations S/1 R/2;"
bool is_signature_header(std::string_view line);
Signature parse_signature_header(std::string_view line);

struct SourceLine {
  int line = 0;
  std::string text;
};

// A corpus file: optional signature header, then one item per line. Blank
// lines and lines starting with '%' are skipped.
struct CorpusFile {
  bool has_header = false;
  Signature sig;
  std::vector<SourceLine> items;
};

CorpusFile split_corpus(std::string_view text);

}  // namespace qrc
