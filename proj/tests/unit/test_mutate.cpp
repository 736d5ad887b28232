#include "doctest.h"

#include <cmath>
#include <set>

#include "json.hpp"

#include "geist/check/checker.hpp"
#include "geist/lang/parser.hpp"
#include "geist/runtime/eval.hpp"
#include "geist/runtime/mutate.hpp"
#include "support.hpp"

using namespace geist;
using namespace geist::runtime;

namespace {

std::filesystem::path radon_dir() { return testsupport::corpus_dir() / "radon"; }

lang::ModelProgram radon_program_ast() {
  return testsupport::parse_or_throw(testsupport::read_file(radon_dir() / "radon.geist"));
}

}  // namespace

TEST_CASE("zero trials gives an empty report") {
  const auto report = run_mutation(radon_program_ast(), radon_dir(), 0, 0);
  CHECK(report.total_mutants == 0);
  CHECK(report.mutants.empty());
  CHECK(report.static_detection_rate() == 1.0);
}

TEST_CASE("every mutant of the radon model is caught statically") {
  const auto report = run_mutation(radon_program_ast(), radon_dir(), 1000, 0);
  CHECK(report.total_mutants > 0);
  CHECK(report.statically_caught == report.total_mutants);
  CHECK(report.false_positives == 0);
  CHECK(report.shape_caught + report.silent + report.unchanged == report.total_mutants);
  std::set<MutationKind> kinds;
  for (const auto& m : report.mutants) {
    kinds.insert(m.kind);
    CHECK_FALSE(m.codes.empty());
  }
  CHECK(kinds.size() == 4);
}

TEST_CASE("mutants differ from the original and from each other") {
  const auto original = radon_program_ast();
  const auto printed = lang::pretty_print(original);
  const auto mutants = enumerate_mutants(original);
  std::set<std::string> texts;
  for (const auto& m : mutants) {
    const auto text = lang::pretty_print(m.program);
    CHECK(text != printed);
    texts.insert(text);
  }
  CHECK(texts.size() == mutants.size());
}

TEST_CASE("a seeded subset is reproducible and sorted") {
  const auto p = radon_program_ast();
  const auto a = run_mutation(p, radon_dir(), 5, 9);
  const auto b = run_mutation(p, radon_dir(), 5, 9);
  REQUIRE(a.mutants.size() == 5);
  CHECK(format_report(a) == format_report(b));
  for (std::size_t i = 1; i < a.mutants.size(); ++i) CHECK(a.mutants[i - 1].index < a.mutants[i].index);
}

TEST_CASE("the in-bounds index transposition is silent without the checker") {
  const auto p = radon_program_ast();
  const auto baseline = evaluate(p, radon_dir()).total_loglik;
  const auto swapped = replace_gather_index(p, "county_idx", "state_obs_idx");
  CHECK(check::has_errors(check::check_program(swapped)));
  const auto forced = force_evaluate(swapped, radon_dir(), baseline);
  CHECK_FALSE(forced.rejected);
  CHECK(std::abs(forced.delta) > kNoChangeTolerance);

  const auto oob = force_evaluate(replace_gather_index(p, "county_idx", "home_idx"), radon_dir(), baseline);
  CHECK(oob.rejected);
  CHECK(oob.code == "E208");
}

TEST_CASE("swap_references is an involution") {
  const auto p = radon_program_ast();
  const auto twice = swap_references(swap_references(p, "county_idx", "home_idx"), "county_idx", "home_idx");
  CHECK(lang::pretty_print(twice) == lang::pretty_print(p));
}

TEST_CASE("mutants of random programs are always flagged") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto prog = testsupport::generate_program(seed);
    const auto p = testsupport::parse_or_throw(prog.text);
    for (const auto& m : enumerate_mutants(p)) {
      CAPTURE(seed);
      CAPTURE(m.description);
      CHECK(check::has_errors(check::check_program(m.program)));
    }
  }
}

TEST_CASE("JSON report carries the summary counts") {
  const auto report = run_mutation(radon_program_ast(), radon_dir(), 3, 1);
  const auto json = nlohmann::json::parse(format_report_json(report));
  CHECK(json["total_mutants"] == 3);
  CHECK(json["false_positives"] == 0);
  CHECK(json["mutants"].size() == 3);
}
