#include "geist/lang/parser.hpp"

#include <charconv>
#include <cstdlib>
#include <initializer_list>
#include <utility>

namespace geist::lang {

namespace {

struct SyntaxError {
  ParseError error;
};

bool starts_item(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwDataset:
    case TokenKind::KwAxis:
    case TokenKind::KwMap:
    case TokenKind::KwIdx:
    case TokenKind::KwVec:
    case TokenKind::KwLet:
    case TokenKind::KwCheck:
    case TokenKind::KwObserve:
      return true;
    default:
      return false;
  }
}

SourceSpan cover(const SourceSpan& first, const SourceSpan& last) {
  SourceSpan out = first;
  out.length = last.offset + last.length - first.offset;
  return out;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const std::string& file) : tokens_(tokens) {
    end_.kind = TokenKind::End;
    end_.span.file = file;
    if (!tokens.empty()) {
      const auto& last = tokens.back().span;
      end_.span = last;
      end_.span.offset = last.offset + last.length;
      end_.span.column = last.column + last.length;
      end_.span.length = 0;
    }
    result_.program.file = file;
  }

  ParseResult run() {
    while (!at(TokenKind::End)) {
      const std::size_t start = pos_;
      try {
        if (starts_item(peek().kind)) {
          parse_item();
        } else {
          fail({TokenKind::KwDataset, TokenKind::KwAxis, TokenKind::KwMap, TokenKind::KwIdx,
                TokenKind::KwVec, TokenKind::KwLet, TokenKind::KwCheck, TokenKind::KwObserve},
               "a declaration or statement");
        }
      } catch (SyntaxError& e) {
        result_.errors.push_back(std::move(e.error));
        if (pos_ == start) ++pos_;
        while (!at(TokenKind::End) && !starts_item(peek().kind)) ++pos_;
      }
    }
    return std::move(result_);
  }

 private:
  const Token& peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : end_; }
  const Token& previous() const { return tokens_[pos_ - 1]; }
  bool at(TokenKind kind) const { return peek().kind == kind; }

  const Token& advance() {
    const Token& t = peek();
    if (pos_ < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<TokenKind> expected, const std::string& what = {}) {
    const Token& found = peek();
    std::string message = "expected ";
    if (!what.empty()) {
      message += what;
    } else {
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) message += i + 1 == expected.size() ? " or " : ", ";
        message += describe(expected[i]);
      }
    }
    message += ", found ";
    if (found.kind == TokenKind::End) {
      message += "end of input";
    } else if (found.kind == TokenKind::String) {
      message += "string \"" + found.text + "\"";
    } else {
      message += "'" + found.text + "'";
    }
    throw SyntaxError{ParseError{std::move(message), std::move(expected), found.span}};
  }

  const Token& expect(TokenKind kind) {
    if (!at(kind)) fail({kind});
    return advance();
  }

  Ident ident() {
    const Token& t = expect(TokenKind::Ident);
    return Ident{t.text, t.span};
  }

  NumberLit number(bool integer_only) {
    const Token& t = peek();
    if (t.kind == TokenKind::Int) {
      advance();
      long long v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw SyntaxError{ParseError{"integer literal '" + t.text + "' is out of range",
                                     {TokenKind::Int}, t.span}};
      }
      return NumberLit{static_cast<double>(v), true, t.span};
    }
    if (t.kind == TokenKind::Real && !integer_only) {
      advance();
      return NumberLit{std::strtod(t.text.c_str(), nullptr), false, t.span};
    }
    if (integer_only) fail({TokenKind::Int});
    fail({TokenKind::Int, TokenKind::Real});
  }

  DataSource source() {
    const SourceSpan start = peek().span;
    if (at(TokenKind::Equals)) {
      advance();
      expect(TokenKind::LBracket);
      std::vector<NumberLit> values;
      values.push_back(number(false));
      while (at(TokenKind::Comma)) {
        advance();
        values.push_back(number(false));
      }
      expect(TokenKind::RBracket);
      return DataSource{std::move(values), cover(start, previous().span)};
    }
    if (at(TokenKind::KwFrom)) {
      advance();
      const Token& path = expect(TokenKind::String);
      return DataSource{path.text, cover(start, path.span)};
    }
    fail({TokenKind::Equals, TokenKind::KwFrom});
  }

  void parse_item() {
    const Token& first = peek();
    switch (first.kind) {
      case TokenKind::KwDataset: {
        advance();
        DatasetDecl d;
        d.name = ident();
        expect(TokenKind::KwObs);
        d.obs_count = number(true);
        push_decl(std::move(d), first.span);
        return;
      }
      case TokenKind::KwAxis: {
        advance();
        AxisDecl d;
        d.name = ident();
        expect(TokenKind::KwSize);
        d.size = number(true);
        push_decl(std::move(d), first.span);
        return;
      }
      case TokenKind::KwMap: {
        advance();
        MapDecl d;
        d.name = ident();
        expect(TokenKind::Colon);
        d.parent = ident();
        expect(TokenKind::Arrow);
        d.child = ident();
        expect(TokenKind::KwIn);
        d.dataset = ident();
        d.source = source();
        push_decl(std::move(d), first.span);
        return;
      }
      case TokenKind::KwIdx: {
        advance();
        IdxDecl d;
        d.name = ident();
        expect(TokenKind::Colon);
        d.axis = ident();
        expect(TokenKind::KwIn);
        d.dataset = ident();
        d.source = source();
        push_decl(std::move(d), first.span);
        return;
      }
      case TokenKind::KwVec: {
        advance();
        VecDecl d;
        d.name = ident();
        expect(TokenKind::Colon);
        d.domain = ident();
        if (at(TokenKind::Equals) || at(TokenKind::KwFrom)) d.source = source();
        push_decl(std::move(d), first.span);
        return;
      }
      case TokenKind::KwLet: {
        advance();
        LetStmt s;
        s.name = ident();
        if (at(TokenKind::Colon)) {
          advance();
          s.annotation = type_ann();
        }
        expect(TokenKind::Equals);
        s.value = expr();
        push_stmt(std::move(s), first.span);
        return;
      }
      case TokenKind::KwCheck: {
        advance();
        CheckStmt s;
        s.value = expr();
        expect(TokenKind::Colon);
        s.annotation = type_ann();
        push_stmt(std::move(s), first.span);
        return;
      }
      case TokenKind::KwObserve: {
        advance();
        ObserveStmt s;
        s.data = ident();
        expect(TokenKind::Tilde);
        expect(TokenKind::KwNormal);
        expect(TokenKind::LParen);
        s.mean = expr();
        expect(TokenKind::Comma);
        s.sigma = expr();
        expect(TokenKind::RParen);
        push_stmt(std::move(s), first.span);
        return;
      }
      default:
        fail({}, "a declaration or statement");
    }
  }

  template <typename D>
  void push_decl(D&& d, const SourceSpan& start) {
    result_.program.items.emplace_back(Decl{std::forward<D>(d), cover(start, previous().span)});
  }

  template <typename S>
  void push_stmt(S&& s, const SourceSpan& start) {
    result_.program.items.emplace_back(Stmt{std::forward<S>(s), cover(start, previous().span)});
  }

  TypeAnn type_ann() {
    TypeAnn ann;
    const Token& first = peek();
    switch (first.kind) {
      case TokenKind::KwVecType:
        advance();
        ann.kind = TypeAnn::Kind::Vec;
        expect(TokenKind::LBracket);
        ann.axis = ident();
        expect(TokenKind::RBracket);
        break;
      case TokenKind::KwIdxType:
        advance();
        ann.kind = TypeAnn::Kind::Idx;
        expect(TokenKind::LBracket);
        ann.axis = ident();
        expect(TokenKind::Comma);
        ann.dataset = ident();
        expect(TokenKind::RBracket);
        break;
      case TokenKind::KwObsType:
        advance();
        ann.kind = TypeAnn::Kind::Obs;
        expect(TokenKind::LBracket);
        ann.dataset = ident();
        expect(TokenKind::RBracket);
        break;
      case TokenKind::KwScalarType:
        advance();
        ann.kind = TypeAnn::Kind::Scalar;
        break;
      default:
        fail({TokenKind::KwVecType, TokenKind::KwIdxType, TokenKind::KwObsType,
              TokenKind::KwScalarType});
    }
    ann.span = cover(first.span, previous().span);
    return ann;
  }

  Expr expr() {
    Expr lhs = product();
    while (at(TokenKind::Plus)) {
      advance();
      Expr rhs = product();
      lhs = binop(BinOpKind::Add, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr product() {
    Expr lhs = term();
    while (at(TokenKind::Star)) {
      advance();
      Expr rhs = term();
      lhs = binop(BinOpKind::Mul, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  static Expr binop(BinOpKind op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = ExprKind::BinOp;
    e.op = op;
    e.span = cover(lhs.span, rhs.span);
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr term() {
    const Token& first = peek();
    Expr e;
    switch (first.kind) {
      case TokenKind::Int:
      case TokenKind::Real: {
        const NumberLit lit = number(false);
        e.kind = ExprKind::Number;
        e.number = lit.value;
        e.integral = lit.integral;
        e.span = lit.span;
        return e;
      }
      case TokenKind::Ident:
        e.kind = ExprKind::Name;
        e.name = ident();
        e.span = e.name.span;
        return e;
      case TokenKind::LParen: {
        advance();
        Expr inner = expr();
        expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::KwGather:
      case TokenKind::KwReindex:
        advance();
        e.kind = first.kind == TokenKind::KwGather ? ExprKind::Gather : ExprKind::Reindex;
        expect(TokenKind::LParen);
        e.args.push_back(expr());
        expect(TokenKind::Comma);
        e.args.push_back(expr());
        expect(TokenKind::RParen);
        e.span = cover(first.span, previous().span);
        return e;
      case TokenKind::KwLift:
        advance();
        e.kind = ExprKind::Lift;
        expect(TokenKind::LParen);
        e.args.push_back(expr());
        expect(TokenKind::Comma);
        e.name = ident();
        expect(TokenKind::RParen);
        e.span = cover(first.span, previous().span);
        return e;
      default:
        fail({}, "an expression");
    }
  }

  const std::vector<Token>& tokens_;
  Token end_;
  std::size_t pos_ = 0;
  ParseResult result_;
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens, const std::string& file) {
  return Parser(tokens, file).run();
}

ParseResult parse_source(std::string_view source, const std::string& file) {
  LexResult lexed = tokenize(source, file);
  ParseResult result = parse(lexed.tokens, file);
  if (!lexed.errors.empty()) {
    std::vector<ParseError> errors;
    for (auto& e : lexed.errors) {
      errors.push_back(ParseError{std::move(e.message), {}, std::move(e.span), true});
    }
    errors.insert(errors.end(), result.errors.begin(), result.errors.end());
    result.errors = std::move(errors);
  }
  return result;
}

}  // namespace geist::lang
