#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geist/lang/lexer.hpp"

namespace geist::lang {

struct Ident {
  std::string text;
  SourceSpan span;
};

struct NumberLit {
  double value = 0.0;
  bool integral = false;
  SourceSpan span;
};

/// `= [1, 2, 3]` or `from "file.csv"`.
struct DataSource {
  std::variant<std::vector<NumberLit>, std::string> payload;
  SourceSpan span;

  bool is_inline() const { return payload.index() == 0; }
  const std::vector<NumberLit>& values() const { return std::get<0>(payload); }
  const std::string& path() const { return std::get<1>(payload); }
};

struct DatasetDecl {
  Ident name;
  NumberLit obs_count;
};

struct AxisDecl {
  Ident name;
  NumberLit size;
};

struct MapDecl {
  Ident name;
  Ident parent;
  Ident child;
  Ident dataset;
  DataSource source;
};

struct IdxDecl {
  Ident name;
  Ident axis;
  Ident dataset;
  DataSource source;
};

/// `vec NAME : X` where X names an axis (Vec[X]) or a dataset (Obs[X]).
struct VecDecl {
  Ident name;
  Ident domain;
  std::optional<DataSource> source;
};

struct Decl {
  std::variant<DatasetDecl, AxisDecl, MapDecl, IdxDecl, VecDecl> node;
  SourceSpan span;
};

enum class BinOpKind { Add, Mul };

enum class ExprKind { Number, Name, Gather, Lift, Reindex, BinOp };

/// Expression tree with value semantics. Operands live in `args`:
/// Gather(vec, idx), Lift(vec) with `target`, Reindex(map, idx), BinOp(lhs, rhs).
struct Expr {
  ExprKind kind = ExprKind::Number;
  SourceSpan span;
  double number = 0.0;
  bool integral = false;
  Ident name;    // Name: the referenced identifier; Lift: the target axis
  BinOpKind op = BinOpKind::Add;
  std::vector<Expr> args;
};

struct TypeAnn {
  enum class Kind { Vec, Idx, Obs, Scalar };
  Kind kind = Kind::Scalar;
  Ident axis;     // Vec, Idx
  Ident dataset;  // Idx, Obs
  SourceSpan span;
};

struct LetStmt {
  Ident name;
  std::optional<TypeAnn> annotation;
  Expr value;
};

struct CheckStmt {
  Expr value;
  TypeAnn annotation;
};

struct ObserveStmt {
  Ident data;
  Expr mean;
  Expr sigma;
};

struct Stmt {
  std::variant<LetStmt, CheckStmt, ObserveStmt> node;
  SourceSpan span;
};

using Item = std::variant<Decl, Stmt>;

/// A parsed source file. Items keep source order; scoping is top-down.
struct ModelProgram {
  std::string file;
  std::vector<Item> items;

  std::vector<const Decl*> declarations() const;
  std::vector<const Stmt*> statements() const;
};

/// Structural equality ignoring source spans.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const ModelProgram& a, const ModelProgram& b);

/// Visits every expression node (pre-order) in a program.
template <typename F>
void for_each_expr(Expr& e, F&& f) {
  f(e);
  for (auto& arg : e.args) for_each_expr(arg, f);
}

template <typename F>
void for_each_expr(const Expr& e, F&& f) {
  f(e);
  for (const auto& arg : e.args) for_each_expr(arg, f);
}

}  // namespace geist::lang
