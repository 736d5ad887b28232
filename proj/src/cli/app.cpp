#include "geist/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "geist/check/checker.hpp"
#include "geist/error.hpp"
#include "geist/lang/parser.hpp"
#include "geist/runtime/data_io.hpp"
#include "geist/runtime/eval.hpp"
#include "geist/runtime/mutate.hpp"
#include "geist/runtime/radon.hpp"

namespace geist::cli {

namespace {

namespace fs = std::filesystem;
using check::Diagnostic;

bool use_color() {
  if (const char* v = std::getenv("GEIST_COLOR")) return std::string(v) == "1";
  return isatty(STDOUT_FILENO) != 0;
}

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, bool json, std::ostream& out) {
  const bool color = !json && use_color();
  for (const auto& d : diagnostics) out << (json ? check::format_json(d) : check::format(d, color)) << "\n";
}

// Parsed source, or the exit code that ends the command.
struct Loaded {
  lang::ModelProgram program;
  std::optional<int> exit;
};

Loaded load(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  Loaded result;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "geist: cannot read " << path << "\n";
    result.exit = kDataError;
    return result;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = lang::parse_source(buffer.str(), path);
  if (!parsed.ok()) {
    const auto diagnostics = check::syntax_diagnostics(parsed.errors);
    print_diagnostics(diagnostics, json, out);
    if (!json) out << "Found " << plural(diagnostics.size(), "syntax error") << " in 1 file\n";
    result.exit = kSyntaxError;
    return result;
  }
  result.program = std::move(parsed.program);
  return result;
}

int eval_error_exit(const runtime::EvalError& e) {
  return e.is_load_error() || e.code() == "E210" ? kDataError : kTypeError;
}

void print_eval_error(const runtime::EvalError& e, std::ostream& out) {
  out << check::format(Diagnostic{e.code(), e.span(), e.what()}, use_color()) << "\n";
}

int cmd_check(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(path, json, out, err);
  if (loaded.exit) return *loaded.exit;
  const auto diagnostics = check::check_program(loaded.program);
  print_diagnostics(diagnostics, json, out);
  const std::size_t errors = check::error_count(diagnostics);
  if (json) {
    nlohmann::ordered_json summary;
    summary["errors"] = errors;
    summary["warnings"] = diagnostics.size() - errors;
    out << summary.dump() << "\n";
  } else if (errors == 0) {
    out << "Success: no issues found\n";
  } else {
    out << "Found " << plural(errors, "error") << " in 1 file\n";
  }
  return errors == 0 ? kOk : kTypeError;
}

int cmd_eval(const std::string& path, bool unsafe, bool values, std::ostream& out,
             std::ostream& err) {
  Loaded loaded = load(path, false, out, err);
  if (loaded.exit) return *loaded.exit;
  if (!unsafe) {
    const auto diagnostics = check::check_program(loaded.program);
    if (check::has_errors(diagnostics)) {
      print_diagnostics(diagnostics, false, out);
      out << "Found " << plural(check::error_count(diagnostics), "error") << " in 1 file\n";
      return kTypeError;
    }
  }
  try {
    const auto report = runtime::evaluate(loaded.program, fs::path(path).parent_path(),
                                          unsafe ? runtime::EvalMode::Unchecked
                                                 : runtime::EvalMode::Checked);
    out << runtime::format_report(report, values);
  } catch (const runtime::EvalError& e) {
    print_eval_error(e, out);
    return eval_error_exit(e);
  }
  return kOk;
}

int cmd_demo(const runtime::RadonConfig& config, const std::string& dir, std::ostream& out,
             std::ostream& err) {
  try {
    const auto run = runtime::run_radon_demo(config, dir);
    const std::string report = runtime::format_radon_report(run);
    std::ofstream(fs::path(dir) / "report.txt") << report;
    out << report;
  } catch (const Error& e) {
    err << "geist: " << e.what() << "\n";
    return kDataError;
  } catch (const runtime::DataFileError& e) {
    err << "geist: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "geist: " << e.what() << "\n";
    return kDataError;
  }
  return kOk;
}

int cmd_mutate(const std::string& path, std::size_t trials, std::uint64_t seed, bool json,
               std::ostream& out, std::ostream& err) {
  Loaded loaded = load(path, json, out, err);
  if (loaded.exit) return *loaded.exit;
  const auto diagnostics = check::check_program(loaded.program);
  if (check::has_errors(diagnostics)) {
    print_diagnostics(diagnostics, json, out);
    err << "geist: mutate needs a well-typed program\n";
    return kTypeError;
  }
  try {
    const auto report =
        runtime::run_mutation(loaded.program, fs::path(path).parent_path(), trials, seed);
    out << (json ? runtime::format_report_json(report) : runtime::format_report(report));
  } catch (const runtime::EvalError& e) {
    print_eval_error(e, out);
    return eval_error_exit(e);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Axis-typed hierarchical model checker", "geist"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;

  auto* check_cmd = app.add_subcommand("check", "Type-check a model program");
  check_cmd->add_option("file", file, "Program to check")->required();
  check_cmd->add_flag("--json", json, "One JSON record per diagnostic");

  bool unsafe = false, values = false;
  auto* eval_cmd = app.add_subcommand("eval", "Load data and evaluate a model program");
  eval_cmd->add_option("file", file, "Program to evaluate")->required();
  eval_cmd->add_flag("--unsafe-skip-check", unsafe,
                     "Skip the type check and validate only lengths and bounds");
  eval_cmd->add_flag("--values", values, "Print every element of each binding");

  runtime::RadonConfig radon;
  std::string out_dir = "radon_demo";
  auto* demo_cmd = app.add_subcommand("demo", "Generate and run a demo model");
  demo_cmd->require_subcommand(1);
  auto* radon_cmd = demo_cmd->add_subcommand("radon", "Three-level radon model");
  radon_cmd->add_option("--states", radon.n_states, "Number of states")->capture_default_str();
  radon_cmd->add_option("--counties", radon.n_counties, "Number of counties")
      ->capture_default_str();
  radon_cmd->add_option("--homes", radon.n_homes, "Number of homes")->capture_default_str();
  radon_cmd->add_option("--seed", radon.seed, "Random seed")->capture_default_str();
  radon_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::size_t trials = 100;
  std::uint64_t seed = 0;
  auto* mutate_cmd = app.add_subcommand("mutate", "Fault-injection harness");
  mutate_cmd->add_option("file", file, "Well-typed program to mutate")->required();
  mutate_cmd->add_option("--trials", trials, "Maximum number of mutants")->capture_default_str();
  mutate_cmd->add_option("--seed", seed, "Seed for choosing mutants")->capture_default_str();
  mutate_cmd->add_flag("--json", json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "geist: " << e.what() << "\n";
    return kSyntaxError;
  }

  if (check_cmd->parsed()) return cmd_check(file, json, out, err);
  if (eval_cmd->parsed()) return cmd_eval(file, unsafe, values, out, err);
  if (radon_cmd->parsed()) return cmd_demo(radon, out_dir, out, err);
  if (mutate_cmd->parsed()) return cmd_mutate(file, trials, seed, json, out, err);
  return kSyntaxError;
}

}  // namespace geist::cli
