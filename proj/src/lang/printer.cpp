#include <charconv>
#include <cmath>
#include <string>

#include "geist/lang/parser.hpp"

namespace geist::lang {

namespace {

void print_source(std::string& out, const DataSource& src) {
  if (src.is_inline()) {
    out += " = [";
    const auto& values = src.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_number(values[i].value, values[i].integral);
    }
    out += "]";
  } else {
    out += " from \"";
    for (char c : src.path()) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += "\"";
  }
}

void print_expr(std::string& out, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
      out += format_number(e.number, e.integral);
      return;
    case ExprKind::Name:
      out += e.name.text;
      return;
    case ExprKind::Gather:
    case ExprKind::Reindex:
      out += e.kind == ExprKind::Gather ? "gather(" : "reindex(";
      print_expr(out, e.args[0]);
      out += ", ";
      print_expr(out, e.args[1]);
      out += ")";
      return;
    case ExprKind::Lift:
      out += "lift(";
      print_expr(out, e.args[0]);
      out += ", " + e.name.text + ")";
      return;
    case ExprKind::BinOp:
      for (std::size_t i = 0; i < 2; ++i) {
        if (i == 1) out += e.op == BinOpKind::Add ? " + " : " * ";
        const bool nested = e.args[i].kind == ExprKind::BinOp;
        if (nested) out += "(";
        print_expr(out, e.args[i]);
        if (nested) out += ")";
      }
      return;
  }
}

void print_decl(std::string& out, const Decl& decl) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DatasetDecl>) {
          out += "dataset " + d.name.text + " obs " + format_number(d.obs_count.value, true);
        } else if constexpr (std::is_same_v<T, AxisDecl>) {
          out += "axis " + d.name.text + " size " + format_number(d.size.value, true);
        } else if constexpr (std::is_same_v<T, MapDecl>) {
          out += "map " + d.name.text + " : " + d.parent.text + " -> " + d.child.text + " in " +
                 d.dataset.text;
          print_source(out, d.source);
        } else if constexpr (std::is_same_v<T, IdxDecl>) {
          out += "idx " + d.name.text + " : " + d.axis.text + " in " + d.dataset.text;
          print_source(out, d.source);
        } else {
          out += "vec " + d.name.text + " : " + d.domain.text;
          if (d.source) print_source(out, *d.source);
        }
      },
      decl.node);
}

void print_stmt(std::string& out, const Stmt& stmt) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LetStmt>) {
          out += "let " + s.name.text;
          if (s.annotation) out += " : " + pretty_print(*s.annotation);
          out += " = ";
          print_expr(out, s.value);
        } else if constexpr (std::is_same_v<T, CheckStmt>) {
          out += "check ";
          print_expr(out, s.value);
          out += " : " + pretty_print(s.annotation);
        } else {
          out += "observe " + s.data.text + " ~ normal(";
          print_expr(out, s.mean);
          out += ", ";
          print_expr(out, s.sigma);
          out += ")";
        }
      },
      stmt.node);
}

}  // namespace

std::string format_number(double value, bool integral) {
  if (integral) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(value));
    return std::string(buf, ptr);
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, ptr);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

std::string pretty_print(const Expr& expr) {
  std::string out;
  print_expr(out, expr);
  return out;
}

std::string pretty_print(const TypeAnn& ann) {
  switch (ann.kind) {
    case TypeAnn::Kind::Vec: return "Vec[" + ann.axis.text + "]";
    case TypeAnn::Kind::Idx: return "Idx[" + ann.axis.text + ", " + ann.dataset.text + "]";
    case TypeAnn::Kind::Obs: return "Obs[" + ann.dataset.text + "]";
    case TypeAnn::Kind::Scalar: return "Scalar";
  }
  return {};
}

std::string pretty_print(const ModelProgram& program) {
  std::string out;
  for (const auto& item : program.items) {
    if (const auto* decl = std::get_if<Decl>(&item)) {
      print_decl(out, *decl);
    } else {
      print_stmt(out, std::get<Stmt>(item));
    }
    out += "\n";
  }
  return out;
}

}  // namespace geist::lang
