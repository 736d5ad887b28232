#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geist/lang/ast.hpp"
#include "geist/lang/lexer.hpp"

namespace geist::lang {

struct ParseError {
  std::string message;  // "expected identifier, found '='"
  std::vector<TokenKind> expected;
  SourceSpan span;
  bool lexical = false;
};

struct ParseResult {
  ModelProgram program;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

/// Recursive-descent parser. On a syntax error it records the error and
/// resynchronises at the next declaration or statement keyword, so one pass
/// reports every independent statement-level error.
ParseResult parse(const std::vector<Token>& tokens, const std::string& file = "<input>");

/// Lex + parse. Lex errors are reported as parse errors with the lexer's
/// message; the parser still runs on the tokens that were produced.
ParseResult parse_source(std::string_view source, const std::string& file = "<input>");

/// Canonical text form. Reparsing the output yields a structurally equal
/// program. Nested binary operations are fully parenthesised.
std::string pretty_print(const ModelProgram& program);
std::string pretty_print(const Expr& expr);
std::string pretty_print(const TypeAnn& ann);

/// Shortest round-trip spelling of a literal; reals always carry a '.' or
/// exponent so they reparse as reals.
std::string format_number(double value, bool integral);

}  // namespace geist::lang
