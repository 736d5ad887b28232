#pragma once

// Evaluation of model programs. Data sources are loaded and validated
// against their declarations, maps are registered per dataset, and `let` /
// `observe` statements run in order. `check` statements are static
// assertions and are not evaluated.
//
// Two modes share the same numeric kernels:
//   Checked   - the typed operations; an axis or dataset mismatch is an error.
//   Unchecked - what an untyped implementation would do: only lengths and
//               index bounds are validated. Used to measure what a mistake
//               does when nothing stops it.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "geist/axis.hpp"
#include "geist/lang/ast.hpp"
#include "geist/registry.hpp"

namespace geist::runtime {

enum class EvalMode { Checked, Unchecked };

using Value = std::variant<double, TypedVec, IndexArray, AxisMap, ObsArray>;

std::string type_name(const Value& v);

/// A run-time failure with a diagnostic code (E201, E202, E206, ...).
class EvalError : public std::runtime_error {
 public:
  EvalError(std::string code, lang::SourceSpan span, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), span_(std::move(span)) {}

  const std::string& code() const noexcept { return code_; }
  const lang::SourceSpan& span() const noexcept { return span_; }

  /// E201 / E202 / E206: rejected by data validation at load time.
  bool is_load_error() const;
  /// E208 / E201 / E202: what a length-and-bounds-only validator catches.
  bool is_shape_error() const;

 private:
  std::string code_;
  lang::SourceSpan span_;
};

struct LetSummary {
  std::string name;
  std::string type;
  std::size_t length = 1;
  std::vector<double> values;
};

struct ObserveResult {
  std::string name;
  double loglik = 0.0;
};

struct EvalReport {
  std::vector<LetSummary> lets;
  std::vector<ObserveResult> observes;
  double total_loglik = 0.0;
};

/// Bindings and frozen registries after loading.
struct EvalEnv {
  std::map<std::string, AxisTag> axes;
  std::map<std::string, DatasetTag> datasets;
  std::vector<std::string> dataset_order;
  std::map<std::string, MapRegistry> registries;
  std::map<std::string, Value> bindings;
  std::map<std::string, std::string> symbolic;  // vec name -> axis/dataset, no data
};

/// Loads data and evaluates `program`. Relative `from` paths resolve against
/// `base_dir`. Throws EvalError.
EvalReport evaluate(const lang::ModelProgram& program, const std::filesystem::path& base_dir,
                    EvalMode mode = EvalMode::Checked);

/// Text report, one line per let / observe plus the total. With
/// `show_values` every element is printed. Doubles use shortest round-trip
/// spelling, so equal reports imply bitwise-equal numbers.
std::string format_report(const EvalReport& report, bool show_values = false);

}  // namespace geist::runtime
