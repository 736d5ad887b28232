#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace geist::lang {

/// 1-based line/column; length in bytes.
struct SourceSpan {
  std::string file;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
  std::size_t offset = 0;
};

enum class TokenKind {
  // keywords
  KwDataset,
  KwObs,
  KwAxis,
  KwSize,
  KwMap,
  KwIn,
  KwIdx,
  KwVec,
  KwFrom,
  KwLet,
  KwCheck,
  KwObserve,
  KwNormal,
  KwGather,
  KwLift,
  KwReindex,
  KwVecType,
  KwIdxType,
  KwObsType,
  KwScalarType,
  // literals
  Ident,
  Int,
  Real,
  String,
  // punctuation
  Colon,
  Arrow,
  Equals,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Plus,
  Star,
  Tilde,
  End,
};

std::string_view describe(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;  // identifier name, string contents, or literal spelling
  SourceSpan span;
};

struct LexError {
  std::string message;
  SourceSpan span;
};

struct LexResult {
  std::vector<Token> tokens;  // does not include the End token
  std::vector<LexError> errors;
};

/// Splits `source` into tokens. `#` starts a comment to end of line.
/// Lexing continues past errors so every bad character is reported.
LexResult tokenize(std::string_view source, const std::string& file = "<input>");

bool is_keyword(std::string_view word);

}  // namespace geist::lang
