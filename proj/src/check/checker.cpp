#include "geist/check/checker.hpp"

#include <algorithm>
#include <utility>

namespace geist::check {

using lang::Expr;
using lang::ExprKind;
using lang::Ident;
using lang::TypeAnn;

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string quoted(const SemType& t) { return quoted(to_string(t)); }

const char* op_name(lang::BinOpKind op) { return op == lang::BinOpKind::Add ? "+" : "*"; }

}  // namespace

std::string to_string(const SemType& t) {
  switch (t.kind) {
    case SemType::Kind::Vec: return "Vec[" + t.axis + "]";
    case SemType::Kind::Idx: return "Idx[" + t.axis + ", " + t.dataset + "]";
    case SemType::Kind::Map: return "Map[" + t.axis + ", " + t.child + ", " + t.dataset + "]";
    case SemType::Kind::Obs: return "Obs[" + t.dataset + "]";
    case SemType::Kind::Scalar: return "Scalar";
    case SemType::Kind::Error: return "<error>";
  }
  return "<error>";
}

LiftResolution resolve_lift(const std::map<std::string, AxisGraph>& registries,
                            const std::vector<std::string>& dataset_order,
                            const std::string& from, const std::string& to) {
  if (from == to) return {LiftResolution::Status::Identity, {}};
  LiftResolution out{LiftResolution::Status::NoPath, {}};
  std::size_t found = 0;
  for (const auto& dataset : dataset_order) {
    auto it = registries.find(dataset);
    if (it == registries.end()) continue;
    const std::size_t paths = it->second.count_paths(from, to);
    if (paths > 1) return {LiftResolution::Status::Ambiguous, dataset};
    if (paths == 1) {
      if (++found > 1) return {LiftResolution::Status::Ambiguous, dataset};
      out = {LiftResolution::Status::Unique, dataset};
    }
  }
  return out;
}

void Checker::report(std::string code, const SourceSpan& span, std::string message,
                     Severity severity) {
  diagnostics_.push_back(Diagnostic{std::move(code), span, std::move(message), severity});
}

std::vector<Diagnostic> Checker::check_program(const lang::ModelProgram& program) {
  for (const auto& item : program.items) {
    if (const auto* decl = std::get_if<lang::Decl>(&item)) {
      declare(*decl);
    } else {
      statement(std::get<lang::Stmt>(item));
    }
  }
  // Unused vec/idx declarations, in declaration order.
  for (const auto* decl : program.declarations()) {
    const Ident* name = nullptr;
    if (const auto* v = std::get_if<lang::VecDecl>(&decl->node)) name = &v->name;
    if (const auto* i = std::get_if<lang::IdxDecl>(&decl->node)) name = &i->name;
    if (name == nullptr) continue;
    auto it = ctx_.bindings.find(name->text);
    if (it != ctx_.bindings.end() && it->second.declared && !it->second.used &&
        it->second.span.offset == name->span.offset) {
      report("W302", name->span, quoted(name->text) + " is declared but never used",
             Severity::Warning);
    }
  }
  return diagnostics_;
}

bool Checker::declare_type_name(const Ident& name) {
  if (ctx_.axes.contains(name.text) || ctx_.datasets.contains(name.text) ||
      ctx_.poisoned.contains(name.text)) {
    report("E108", name.span, "Name " + quoted(name.text) + " already defined as an axis or dataset");
    return false;
  }
  return true;
}

void Checker::bind_value(const Ident& name, SemType type, bool declared) {
  auto it = ctx_.bindings.find(name.text);
  if (it != ctx_.bindings.end()) {
    if (declared && it->second.declared) {
      report("E108", name.span, "Name " + quoted(name.text) + " already defined");
      return;
    }
    report("W301", name.span, "Binding " + quoted(name.text) + " shadows an earlier definition",
           Severity::Warning);
  }
  ctx_.bindings[name.text] = Binding{std::move(type), name.span, declared, false};
}

std::optional<std::string> Checker::resolve_axis(const Ident& name) {
  if (ctx_.axes.contains(name.text)) return name.text;
  if (ctx_.poisoned.contains(name.text)) return std::nullopt;
  if (ctx_.datasets.contains(name.text)) {
    report("E109", name.span, quoted(name.text) + " is a dataset, not an axis");
  } else {
    report("E105", name.span, "Name " + quoted(name.text) + " is not defined");
  }
  return std::nullopt;
}

std::optional<std::string> Checker::resolve_dataset(const Ident& name) {
  if (ctx_.datasets.contains(name.text)) return name.text;
  if (ctx_.poisoned.contains(name.text)) return std::nullopt;
  if (ctx_.axes.contains(name.text)) {
    report("E109", name.span, quoted(name.text) + " is an axis, not a dataset");
  } else {
    report("E105", name.span, "Name " + quoted(name.text) + " is not defined");
  }
  return std::nullopt;
}

std::optional<SemType> Checker::resolve_annotation(const TypeAnn& ann) {
  switch (ann.kind) {
    case TypeAnn::Kind::Vec: {
      auto axis = resolve_axis(ann.axis);
      if (!axis) return std::nullopt;
      return SemType::vec(*axis);
    }
    case TypeAnn::Kind::Idx: {
      auto axis = resolve_axis(ann.axis);
      auto dataset = resolve_dataset(ann.dataset);
      if (!axis || !dataset) return std::nullopt;
      return SemType::idx(*axis, *dataset);
    }
    case TypeAnn::Kind::Obs: {
      auto dataset = resolve_dataset(ann.dataset);
      if (!dataset) return std::nullopt;
      return SemType::obs(*dataset);
    }
    case TypeAnn::Kind::Scalar:
      return SemType::scalar();
  }
  return std::nullopt;
}

void Checker::declare(const lang::Decl& decl) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, lang::DatasetDecl>) {
          if (!declare_type_name(d.name)) return;
          if (d.obs_count.value < 1) {
            report("E109", d.obs_count.span,
                   "Dataset " + quoted(d.name.text) + " must have at least one observation");
            ctx_.poisoned.insert(d.name.text);
            return;
          }
          ctx_.datasets[d.name.text] = static_cast<std::size_t>(d.obs_count.value);
          ctx_.dataset_order.push_back(d.name.text);
          ctx_.registries[d.name.text];
        } else if constexpr (std::is_same_v<T, lang::AxisDecl>) {
          if (!declare_type_name(d.name)) return;
          if (d.size.value < 1) {
            report("E109", d.size.span,
                   "Axis " + quoted(d.name.text) + " must have at least one level");
            ctx_.poisoned.insert(d.name.text);
            return;
          }
          ctx_.axes[d.name.text] = static_cast<std::size_t>(d.size.value);
          ctx_.axis_order.push_back(d.name.text);
        } else if constexpr (std::is_same_v<T, lang::MapDecl>) {
          auto parent = resolve_axis(d.parent);
          auto child = resolve_axis(d.child);
          auto dataset = resolve_dataset(d.dataset);
          if (!parent || !child || !dataset) {
            bind_value(d.name, SemType::error(), true);
            return;
          }
          switch (ctx_.registries[*dataset].add_edge(*parent, *child)) {
            case AxisGraph::Insert::Duplicate:
              report("E203", d.name.span,
                     "Map " + *parent + " -> " + *child + " is already registered in dataset " +
                         quoted(*dataset));
              break;
            case AxisGraph::Insert::Cycle:
              report("E204", d.name.span,
                     "Map " + *parent + " -> " + *child + " would create a cycle in dataset " +
                         quoted(*dataset) + "; maps must point from parent to child");
              break;
            case AxisGraph::Insert::Added:
              break;
          }
          bind_value(d.name, SemType::map(*parent, *child, *dataset), true);
        } else if constexpr (std::is_same_v<T, lang::IdxDecl>) {
          auto axis = resolve_axis(d.axis);
          auto dataset = resolve_dataset(d.dataset);
          bind_value(d.name, axis && dataset ? SemType::idx(*axis, *dataset) : SemType::error(),
                     true);
        } else {
          SemType type = SemType::error();
          if (ctx_.axes.contains(d.domain.text)) {
            type = SemType::vec(d.domain.text);
          } else if (ctx_.datasets.contains(d.domain.text)) {
            type = SemType::obs(d.domain.text);
          } else if (!ctx_.poisoned.contains(d.domain.text)) {
            report("E105", d.domain.span, "Name " + quoted(d.domain.text) + " is not defined");
          }
          bind_value(d.name, type, true);
        }
      },
      decl.node);
}

void Checker::statement(const lang::Stmt& stmt) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, lang::LetStmt>) {
          SemType type = infer_expr(s.value);
          if (s.annotation) {
            if (auto d = check_annotation(*s.annotation, type, s.annotation->span)) {
              diagnostics_.push_back(std::move(*d));
              type = SemType::error();  // one mistake, one diagnostic
            }
          }
          bind_value(s.name, type, false);
        } else if constexpr (std::is_same_v<T, lang::CheckStmt>) {
          SemType type = infer_expr(s.value);
          if (auto d = check_annotation(s.annotation, type, s.annotation.span, false)) {
            diagnostics_.push_back(std::move(*d));
          }
        } else {
          Expr data;
          data.kind = ExprKind::Name;
          data.name = s.data;
          data.span = s.data.span;
          const SemType observed = infer_expr(data);
          const SemType mean = infer_expr(s.mean);
          const SemType sigma = infer_expr(s.sigma);
          if (!observed.is_error() && observed.kind != SemType::Kind::Vec &&
              observed.kind != SemType::Kind::Obs) {
            report("E107", s.data.span,
                   "Observed value " + quoted(s.data.text) + " has type " + quoted(observed) +
                       "; expected a Vec or Obs");
          } else if (!observed.is_error() && !mean.is_error() && mean != observed &&
                     mean.kind != SemType::Kind::Scalar) {
            const bool dataset_only =
                mean.kind == SemType::Kind::Obs && observed.kind == SemType::Kind::Obs;
            const bool wrong_kind =
                mean.kind == SemType::Kind::Idx || mean.kind == SemType::Kind::Map;
            report(wrong_kind ? "E107" : dataset_only ? "E106" : "E104", s.mean.span,
                   "Argument 1 to \"normal\" has incompatible type " + quoted(mean) +
                       "; expected " + quoted(observed));
          }
          if (!sigma.is_error() && sigma.kind != SemType::Kind::Scalar) {
            report("E107", s.sigma.span,
                   "Argument 2 to \"normal\" has incompatible type " + quoted(sigma) +
                       "; expected \"Scalar\"");
          }
        }
      },
      stmt.node);
}

std::optional<Diagnostic> Checker::check_annotation(const TypeAnn& declared,
                                                    const SemType& inferred,
                                                    const SourceSpan& span, bool assignment) {
  auto expected = resolve_annotation(declared);
  if (!expected || inferred.is_error() || *expected == inferred) return std::nullopt;
  std::string message =
      assignment ? "Incompatible types in assignment (expression has type " + quoted(inferred) +
                       "; variable has type " + quoted(*expected) + ")"
                 : "Incompatible types in check (expression has type " + quoted(inferred) +
                       "; expected " + quoted(*expected) + ")";
  return Diagnostic{"E103", span, std::move(message), Severity::Error};
}

SemType Checker::infer_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
      return SemType::scalar();
    case ExprKind::Name: {
      auto it = ctx_.bindings.find(e.name.text);
      if (it != ctx_.bindings.end()) {
        it->second.used = true;
        return it->second.type;
      }
      if (ctx_.axes.contains(e.name.text)) {
        report("E107", e.span, quoted(e.name.text) + " is an axis, not a value");
      } else if (ctx_.datasets.contains(e.name.text)) {
        report("E107", e.span, quoted(e.name.text) + " is a dataset, not a value");
      } else if (!ctx_.poisoned.contains(e.name.text)) {
        report("E105", e.span, "Name " + quoted(e.name.text) + " is not defined");
      }
      return SemType::error();
    }
    case ExprKind::Gather: return infer_gather(e);
    case ExprKind::Lift: return infer_lift(e);
    case ExprKind::Reindex: return infer_reindex(e);
    case ExprKind::BinOp: return infer_binop(e);
  }
  return SemType::error();
}

SemType Checker::infer_gather(const Expr& e) {
  const SemType vec = infer_expr(e.args[0]);
  const SemType idx = infer_expr(e.args[1]);
  if (vec.is_error() || idx.is_error()) return SemType::error();
  bool ok = true;
  if (vec.kind != SemType::Kind::Vec) {
    report("E107", e.args[0].span,
           "Receiver of \"gather\" has incompatible type " + quoted(vec) + "; expected a Vec");
    ok = false;
  }
  if (idx.kind != SemType::Kind::Idx) {
    report("E107", e.args[1].span,
           "Argument 1 to \"gather\" has incompatible type " + quoted(idx) + "; expected an Idx");
    ok = false;
  }
  if (!ok) return SemType::error();
  if (idx.axis != vec.axis) {
    report("E101", e.args[1].span,
           "Argument 1 to \"gather\" has incompatible type " + quoted(idx) + "; expected " +
               quoted(SemType::idx(vec.axis, idx.dataset)));
    return SemType::error();
  }
  return SemType::obs(idx.dataset);
}

SemType Checker::infer_lift(const Expr& e) {
  const SemType vec = infer_expr(e.args[0]);
  const auto target = [&]() -> std::optional<std::string> {
    const Ident& to = e.name;
    if (ctx_.axes.contains(to.text)) return to.text;
    if (ctx_.poisoned.contains(to.text)) return std::nullopt;
    if (ctx_.datasets.contains(to.text)) {
      report("E107", to.span, quoted(to.text) + " is a dataset, not an axis");
    } else {
      report("E105", to.span, "Name " + quoted(to.text) + " is not defined");
    }
    return std::nullopt;
  }();
  if (vec.is_error() || !target) return SemType::error();
  if (vec.kind != SemType::Kind::Vec) {
    report("E107", e.args[0].span,
           "Argument 1 to \"lift\" has incompatible type " + quoted(vec) + "; expected a Vec");
    return SemType::error();
  }
  const auto resolution = resolve_lift(ctx_.registries, ctx_.dataset_order, vec.axis, *target);
  switch (resolution.status) {
    case LiftResolution::Status::Unique:
      ctx_.lifts.push_back({vec.axis, *target, resolution.dataset});
      return SemType::vec(*target);
    case LiftResolution::Status::Identity:
      return SemType::vec(*target);
    case LiftResolution::Status::Ambiguous:
      report("E205", e.name.span,
             "Lift from " + quoted(vec) + " to \"type[" + *target +
                 "]\" is ambiguous: more than one registered path (dataset " +
                 quoted(resolution.dataset) + ")");
      return SemType::error();
    case LiftResolution::Status::NoPath:
      break;
  }
  std::vector<std::string> reachable;
  for (const auto& axis : ctx_.axis_order) {
    for (const auto& dataset : ctx_.dataset_order) {
      const auto& graph = ctx_.registries[dataset];
      if (axis != vec.axis && graph.count_paths(vec.axis, axis, 1) > 0) {
        reachable.push_back(axis);
        break;
      }
    }
  }
  std::string message =
      "Argument \"to\" to \"lift\" has incompatible type \"type[" + *target + "]\"; ";
  if (reachable.empty()) {
    message += "no maps are registered from " + quoted(vec.axis);
  } else {
    message += "expected \"";
    for (std::size_t i = 0; i < reachable.size(); ++i) {
      if (i > 0) message += " | ";
      message += "type[" + reachable[i] + "]";
    }
    message += "\"";
  }
  report("E102", e.name.span, std::move(message));
  return SemType::error();
}

SemType Checker::infer_reindex(const Expr& e) {
  const SemType map = infer_expr(e.args[0]);
  const SemType idx = infer_expr(e.args[1]);
  if (map.is_error() || idx.is_error()) return SemType::error();
  bool ok = true;
  if (map.kind != SemType::Kind::Map) {
    report("E107", e.args[0].span,
           "Receiver of \"reindex\" has incompatible type " + quoted(map) + "; expected a Map");
    ok = false;
  }
  if (idx.kind != SemType::Kind::Idx) {
    report("E107", e.args[1].span,
           "Argument 1 to \"reindex\" has incompatible type " + quoted(idx) + "; expected an Idx");
    ok = false;
  }
  if (!ok) return SemType::error();
  if (idx.axis != map.child || idx.dataset != map.dataset) {
    report(idx.axis != map.child ? "E101" : "E106", e.args[1].span,
           "Argument 1 to \"reindex\" has incompatible type " + quoted(idx) + "; expected " +
               quoted(SemType::idx(map.child, map.dataset)));
    return SemType::error();
  }
  return SemType::idx(map.axis, idx.dataset);
}

SemType Checker::infer_binop(const Expr& e) {
  const SemType lhs = infer_expr(e.args[0]);
  const SemType rhs = infer_expr(e.args[1]);
  if (lhs.is_error() || rhs.is_error()) return SemType::error();
  bool ok = true;
  for (std::size_t i = 0; i < 2; ++i) {
    const SemType& t = i == 0 ? lhs : rhs;
    if (t.kind == SemType::Kind::Idx || t.kind == SemType::Kind::Map) {
      report("E107", e.args[i].span,
             "Unsupported operand type for " + std::string(op_name(e.op)) + " (" + quoted(t) + ")");
      ok = false;
    }
  }
  if (!ok) return SemType::error();
  if (lhs.kind == SemType::Kind::Scalar) return rhs;
  if (rhs.kind == SemType::Kind::Scalar || lhs == rhs) return lhs;
  // Blame the operand that is not at observation level when exactly one is.
  const bool blame_lhs = rhs.kind == SemType::Kind::Obs && lhs.kind != SemType::Kind::Obs;
  const SemType& bad = blame_lhs ? lhs : rhs;
  const SemType& expected = blame_lhs ? rhs : lhs;
  const bool dataset_only = lhs.kind == SemType::Kind::Obs && rhs.kind == SemType::Kind::Obs;
  report(dataset_only ? "E106" : "E104", e.args[blame_lhs ? 0 : 1].span,
         "Argument " + std::string(blame_lhs ? "1" : "2") + " to \"" + op_name(e.op) +
             "\" has incompatible type " + quoted(bad) + "; expected " + quoted(expected));
  return SemType::error();
}

std::vector<Diagnostic> check_program(const lang::ModelProgram& program) {
  return Checker().check_program(program);
}

std::vector<Diagnostic> syntax_diagnostics(const std::vector<lang::ParseError>& errors) {
  std::vector<Diagnostic> out;
  out.reserve(errors.size());
  for (const auto& e : errors) out.push_back({e.lexical ? "E001" : "E002", e.span, e.message});
  return out;
}

std::vector<Diagnostic> check_registry_decls(const lang::ModelProgram& program) {
  std::vector<Diagnostic> out;
  for (auto& d : check_program(program)) {
    if (d.code == "E203" || d.code == "E204" || d.code == "E205") out.push_back(std::move(d));
  }
  return out;
}

}  // namespace geist::check
