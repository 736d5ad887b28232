#pragma once

// Static checker for model programs. Types are synthesised bottom-up; no
// data is read. A program with no error diagnostics evaluates without axis
// or dataset mismatches.
//
// Typing rules:
//   gather(Vec[K], Idx[K, D])        : Obs[D]
//   lift(Vec[K], L)                  : Vec[L]   iff a unique registered path K ~> L exists
//   reindex(Map[K, L, D], Idx[L, D]) : Idx[K, D]
//   a + b, a * b                     : both sides equal among Vec[K], Obs[D], Scalar,
//                                      or one side Scalar; result is the non-scalar side

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geist/check/diagnostic.hpp"
#include "geist/lang/ast.hpp"
#include "geist/lang/parser.hpp"
#include "geist/registry.hpp"

namespace geist::check {

struct SemType {
  enum class Kind { Vec, Idx, Map, Obs, Scalar, Error };

  Kind kind = Kind::Error;
  std::string axis;     // Vec, Idx; parent axis for Map
  std::string child;    // Map
  std::string dataset;  // Idx, Map, Obs

  static SemType vec(std::string axis) { return {Kind::Vec, std::move(axis), {}, {}}; }
  static SemType idx(std::string axis, std::string dataset) {
    return {Kind::Idx, std::move(axis), {}, std::move(dataset)};
  }
  static SemType map(std::string parent, std::string child, std::string dataset) {
    return {Kind::Map, std::move(parent), std::move(child), std::move(dataset)};
  }
  static SemType obs(std::string dataset) { return {Kind::Obs, {}, {}, std::move(dataset)}; }
  static SemType scalar() { return {Kind::Scalar, {}, {}, {}}; }
  static SemType error() { return {}; }

  bool is_error() const { return kind == Kind::Error; }

  friend bool operator==(const SemType&, const SemType&) = default;
};

/// `Vec[County]`, `Idx[County, Data]`, `Map[State, County, Data]`, `Obs[Data]`, `Scalar`.
std::string to_string(const SemType& t);

struct Binding {
  SemType type;
  SourceSpan span;
  bool declared = false;  // from a vec/idx/map declaration rather than a let
  bool used = false;
};

/// The checker's environment. Registries are symbolic: edges only.
struct CheckContext {
  std::map<std::string, std::size_t> axes;
  std::map<std::string, std::size_t> datasets;
  std::vector<std::string> axis_order;
  std::vector<std::string> dataset_order;
  std::map<std::string, AxisGraph> registries;
  std::map<std::string, Binding> bindings;
  std::set<std::string> poisoned;  // names whose declaration was invalid

  struct LiftUse {
    std::string from;
    std::string to;
    std::string dataset;
  };
  std::vector<LiftUse> lifts;  // every lift resolved through a registry
};

/// Outcome of resolving a lift over every dataset's registry.
struct LiftResolution {
  enum class Status { Identity, Unique, NoPath, Ambiguous };
  Status status = Status::NoPath;
  std::string dataset;  // for Unique, and the offending dataset for Ambiguous
};

LiftResolution resolve_lift(const std::map<std::string, AxisGraph>& registries,
                            const std::vector<std::string>& dataset_order,
                            const std::string& from, const std::string& to);

class Checker {
 public:
  std::vector<Diagnostic> check_program(const lang::ModelProgram& program);

  /// Infers the type of `expr` in the current context. Errors are appended
  /// to the diagnostics and yield SemType::Error, which never produces
  /// further diagnostics.
  SemType infer_expr(const lang::Expr& expr);

  /// E103 iff the annotation's type differs from `inferred`.
  std::optional<Diagnostic> check_annotation(const lang::TypeAnn& declared,
                                             const SemType& inferred, const SourceSpan& span,
                                             bool assignment = true);

  CheckContext& context() { return ctx_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  void declare(const lang::Decl& decl);
  void statement(const lang::Stmt& stmt);

  bool declare_type_name(const lang::Ident& name);
  void bind_value(const lang::Ident& name, SemType type, bool declared);
  std::optional<std::string> resolve_axis(const lang::Ident& name);
  std::optional<std::string> resolve_dataset(const lang::Ident& name);
  std::optional<SemType> resolve_annotation(const lang::TypeAnn& ann);

  SemType infer_gather(const lang::Expr& e);
  SemType infer_lift(const lang::Expr& e);
  SemType infer_reindex(const lang::Expr& e);
  SemType infer_binop(const lang::Expr& e);

  void report(std::string code, const SourceSpan& span, std::string message,
              Severity severity = Severity::Error);

  CheckContext ctx_;
  std::vector<Diagnostic> diagnostics_;
};

/// Convenience wrapper: a fresh checker over one program.
std::vector<Diagnostic> check_program(const lang::ModelProgram& program);

/// E001 for lexical errors, E002 for the rest.
std::vector<Diagnostic> syntax_diagnostics(const std::vector<lang::ParseError>& errors);

/// Registry-only findings (E203 duplicates, E204 cycles, E205 ambiguous lifts).
std::vector<Diagnostic> check_registry_decls(const lang::ModelProgram& program);

}  // namespace geist::check
