#pragma once

// Fault injection for model programs. Each mutation operator changes the
// axis semantics of a well-typed program in one place; the harness records
// whether the static checker flags the mutant, whether an unchecked
// (length-and-bounds only) evaluation rejects it, and how far the
// log-likelihood moves when it is evaluated anyway.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geist/check/diagnostic.hpp"
#include "geist/lang/ast.hpp"

namespace geist::runtime {

enum class MutationKind {
  IdxSwap,           // exchange every use of two index arrays over different axes
  LiftTarget,        // retarget one lift to another axis
  MapReverse,        // declare a map in the opposite direction
  AnnotationRebind,  // annotate a binding with the wrong axis
};

std::string_view to_string(MutationKind kind);

struct Mutant {
  MutationKind kind;
  std::string description;
  lang::ModelProgram program;
};

/// Every applicable mutant of `program`, in a fixed order. Operators only
/// target entities the program uses: an unused idx or map cannot change
/// anything.
std::vector<Mutant> enumerate_mutants(const lang::ModelProgram& program);

/// Replaces every reference to `from` in statements with `to` and vice versa.
lang::ModelProgram swap_references(const lang::ModelProgram& program, const std::string& a,
                                   const std::string& b);

/// Replaces index-argument references to `from` inside gather calls only.
lang::ModelProgram replace_gather_index(const lang::ModelProgram& program,
                                        const std::string& from, const std::string& to);

/// Absolute log-likelihood changes at or below this are "no change".
inline constexpr double kNoChangeTolerance = 1e-12;

struct MutantRecord {
  std::size_t index = 0;  // position in enumerate_mutants order
  MutationKind kind = MutationKind::IdxSwap;
  std::string description;
  bool statically_caught = false;
  std::vector<std::string> codes;  // error codes reported by the checker
  bool shape_caught = false;       // rejected by unchecked evaluation
  std::string runtime_code;        // EvalError code when shape_caught
  std::optional<double> loglik_delta;
  bool silent = false;  // evaluated and moved the likelihood
};

struct MutationReport {
  std::size_t total_mutants = 0;
  std::size_t statically_caught = 0;
  std::size_t shape_caught = 0;
  std::size_t silent = 0;
  std::size_t unchanged = 0;  // evaluated without changing the likelihood
  std::size_t false_positives = 0;  // original program failing re-check
  std::vector<MutantRecord> mutants;

  double static_detection_rate() const;
};

/// Outcome of forcing one program through unchecked evaluation against a
/// baseline total log-likelihood.
struct ForcedOutcome {
  bool rejected = false;
  std::string code;
  std::string message;
  double loglik = 0.0;
  double delta = 0.0;
};

ForcedOutcome force_evaluate(const lang::ModelProgram& program,
                             const std::filesystem::path& base_dir, double baseline_loglik);

/// Runs up to `trials` mutants of a well-typed, evaluable program. When more
/// mutants exist than `trials`, a seeded subset is taken. Records are ordered
/// by mutant index regardless of evaluation order.
MutationReport run_mutation(const lang::ModelProgram& program,
                            const std::filesystem::path& base_dir, std::size_t trials,
                            std::uint64_t seed);

std::string format_report(const MutationReport& report);
std::string format_report_json(const MutationReport& report);

}  // namespace geist::runtime
