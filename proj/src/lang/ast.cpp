#include "geist/lang/ast.hpp"

namespace geist::lang {

namespace {

bool same(const Ident& a, const Ident& b) { return a.text == b.text; }

bool same(const NumberLit& a, const NumberLit& b) {
  return a.integral == b.integral && a.value == b.value;
}

bool same(const DataSource& a, const DataSource& b) {
  if (a.is_inline() != b.is_inline()) return false;
  if (!a.is_inline()) return a.path() == b.path();
  const auto& x = a.values();
  const auto& y = b.values();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!same(x[i], y[i])) return false;
  }
  return true;
}

bool same(const TypeAnn& a, const TypeAnn& b) {
  return a.kind == b.kind && same(a.axis, b.axis) && same(a.dataset, b.dataset);
}

bool same(const Decl& a, const Decl& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, DatasetDecl>) {
          return same(x.name, y.name) && same(x.obs_count, y.obs_count);
        } else if constexpr (std::is_same_v<T, AxisDecl>) {
          return same(x.name, y.name) && same(x.size, y.size);
        } else if constexpr (std::is_same_v<T, MapDecl>) {
          return same(x.name, y.name) && same(x.parent, y.parent) && same(x.child, y.child) &&
                 same(x.dataset, y.dataset) && same(x.source, y.source);
        } else if constexpr (std::is_same_v<T, IdxDecl>) {
          return same(x.name, y.name) && same(x.axis, y.axis) && same(x.dataset, y.dataset) &&
                 same(x.source, y.source);
        } else {
          if (!same(x.name, y.name) || !same(x.domain, y.domain)) return false;
          if (x.source.has_value() != y.source.has_value()) return false;
          return !x.source || same(*x.source, *y.source);
        }
      },
      a.node);
}

bool same(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, LetStmt>) {
          if (!same(x.name, y.name) || !same_structure(x.value, y.value)) return false;
          if (x.annotation.has_value() != y.annotation.has_value()) return false;
          return !x.annotation || same(*x.annotation, *y.annotation);
        } else if constexpr (std::is_same_v<T, CheckStmt>) {
          return same_structure(x.value, y.value) && same(x.annotation, y.annotation);
        } else {
          return same(x.data, y.data) && same_structure(x.mean, y.mean) &&
                 same_structure(x.sigma, y.sigma);
        }
      },
      a.node);
}

}  // namespace

std::vector<const Decl*> ModelProgram::declarations() const {
  std::vector<const Decl*> out;
  for (const auto& item : items) {
    if (const auto* d = std::get_if<Decl>(&item)) out.push_back(d);
  }
  return out;
}

std::vector<const Stmt*> ModelProgram::statements() const {
  std::vector<const Stmt*> out;
  for (const auto& item : items) {
    if (const auto* s = std::get_if<Stmt>(&item)) out.push_back(s);
  }
  return out;
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::Number:
      if (a.number != b.number || a.integral != b.integral) return false;
      break;
    case ExprKind::Name:
    case ExprKind::Lift:
      if (a.name.text != b.name.text) return false;
      break;
    case ExprKind::BinOp:
      if (a.op != b.op) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_structure(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool same_structure(const ModelProgram& a, const ModelProgram& b) {
  if (a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (a.items[i].index() != b.items[i].index()) return false;
    if (const auto* d = std::get_if<Decl>(&a.items[i])) {
      if (!same(*d, std::get<Decl>(b.items[i]))) return false;
    } else if (!same(std::get<Stmt>(a.items[i]), std::get<Stmt>(b.items[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace geist::lang
