#include "geist/lang/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace geist::lang {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 20> kKeywords{{
    {"dataset", TokenKind::KwDataset},   {"obs", TokenKind::KwObs},
    {"axis", TokenKind::KwAxis},         {"size", TokenKind::KwSize},
    {"map", TokenKind::KwMap},           {"in", TokenKind::KwIn},
    {"idx", TokenKind::KwIdx},           {"vec", TokenKind::KwVec},
    {"from", TokenKind::KwFrom},         {"let", TokenKind::KwLet},
    {"check", TokenKind::KwCheck},       {"observe", TokenKind::KwObserve},
    {"normal", TokenKind::KwNormal},     {"gather", TokenKind::KwGather},
    {"lift", TokenKind::KwLift},         {"reindex", TokenKind::KwReindex},
    {"Vec", TokenKind::KwVecType},       {"Idx", TokenKind::KwIdxType},
    {"Obs", TokenKind::KwObsType},       {"Scalar", TokenKind::KwScalarType},
}};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  LexResult run() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (ident_start(c)) {
        lex_word();
      } else if (digit(c) || c == '.' ||
                 (c == '-' && pos_ + 1 < src_.size() &&
                  (digit(src_[pos_ + 1]) || src_[pos_ + 1] == '.'))) {
        lex_number();
      } else if (c == '"') {
        lex_string();
      } else {
        lex_punct();
      }
    }
    return std::move(out_);
  }

 private:
  SourceSpan here() const { return SourceSpan{file_, line_, column_, 0, pos_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void emit(TokenKind kind, std::string text, SourceSpan start) {
    start.length = pos_ - start.offset;
    out_.tokens.push_back(Token{kind, std::move(text), std::move(start)});
  }

  void error(std::string message, SourceSpan start) {
    start.length = std::max<std::size_t>(1, pos_ - start.offset);
    out_.errors.push_back(LexError{std::move(message), std::move(start)});
  }

  void lex_word() {
    const SourceSpan start = here();
    while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
    const std::string_view word = src_.substr(start.offset, pos_ - start.offset);
    for (const auto& [kw, kind] : kKeywords) {
      if (kw == word) return emit(kind, std::string(word), start);
    }
    emit(TokenKind::Ident, std::string(word), start);
  }

  void lex_number() {
    const SourceSpan start = here();
    bool real = false;
    bool ok = true;
    if (src_[pos_] == '-') advance();
    std::size_t int_digits = 0;
    while (pos_ < src_.size() && digit(src_[pos_])) {
      advance();
      ++int_digits;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      real = true;
      advance();
      std::size_t frac_digits = 0;
      while (pos_ < src_.size() && digit(src_[pos_])) {
        advance();
        ++frac_digits;
      }
      if (int_digits == 0 || frac_digits == 0) ok = false;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      real = true;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      std::size_t exp_digits = 0;
      while (pos_ < src_.size() && digit(src_[pos_])) {
        advance();
        ++exp_digits;
      }
      if (exp_digits == 0) ok = false;
    }
    // A number running straight into an identifier ("12abc") is malformed.
    while (pos_ < src_.size() && (ident_char(src_[pos_]) || src_[pos_] == '.')) {
      advance();
      ok = false;
    }
    const std::string text(src_.substr(start.offset, pos_ - start.offset));
    if (!ok) return error("malformed number '" + text + "'", start);
    emit(real ? TokenKind::Real : TokenKind::Int, text, start);
  }

  void lex_string() {
    const SourceSpan start = here();
    advance();
    std::string value;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() &&
          (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) {
        advance();
      }
      value.push_back(src_[pos_]);
      advance();
    }
    if (pos_ >= src_.size() || src_[pos_] != '"') {
      return error("unterminated string literal", start);
    }
    advance();
    emit(TokenKind::String, std::move(value), start);
  }

  void lex_punct() {
    const SourceSpan start = here();
    const char c = src_[pos_];
    TokenKind kind;
    switch (c) {
      case ':': kind = TokenKind::Colon; break;
      case '=': kind = TokenKind::Equals; break;
      case '[': kind = TokenKind::LBracket; break;
      case ']': kind = TokenKind::RBracket; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      case '+': kind = TokenKind::Plus; break;
      case '*': kind = TokenKind::Star; break;
      case '~': kind = TokenKind::Tilde; break;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          advance();
          advance();
          return emit(TokenKind::Arrow, "->", start);
        }
        [[fallthrough]];
      default: {
        advance();
        const auto byte = static_cast<unsigned char>(c);
        std::string shown = byte >= 0x20 && byte < 0x7f ? std::string(1, c) : "\\x" + hex(byte);
        return error("illegal character '" + shown + "'", start);
      }
    }
    advance();
    emit(kind, std::string(1, c), start);
  }

  static std::string hex(unsigned char byte) {
    constexpr char digits[] = "0123456789abcdef";
    return {digits[byte >> 4], digits[byte & 0xf]};
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  LexResult out_;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (const auto& entry : kKeywords) {
    if (entry.first == word) return true;
  }
  return false;
}

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwDataset: return "'dataset'";
    case TokenKind::KwObs: return "'obs'";
    case TokenKind::KwAxis: return "'axis'";
    case TokenKind::KwSize: return "'size'";
    case TokenKind::KwMap: return "'map'";
    case TokenKind::KwIn: return "'in'";
    case TokenKind::KwIdx: return "'idx'";
    case TokenKind::KwVec: return "'vec'";
    case TokenKind::KwFrom: return "'from'";
    case TokenKind::KwLet: return "'let'";
    case TokenKind::KwCheck: return "'check'";
    case TokenKind::KwObserve: return "'observe'";
    case TokenKind::KwNormal: return "'normal'";
    case TokenKind::KwGather: return "'gather'";
    case TokenKind::KwLift: return "'lift'";
    case TokenKind::KwReindex: return "'reindex'";
    case TokenKind::KwVecType: return "'Vec'";
    case TokenKind::KwIdxType: return "'Idx'";
    case TokenKind::KwObsType: return "'Obs'";
    case TokenKind::KwScalarType: return "'Scalar'";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::Real: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Colon: return "':'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Equals: return "'='";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

LexResult tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace geist::lang
