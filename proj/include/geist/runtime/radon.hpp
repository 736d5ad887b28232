#pragma once

// The three-level radon model with synthetic data:
//
//   gamma_0[s] ~ N(eta_0 + eta_1 v_state[s], sigma_s)
//   a[j]       ~ N(gamma_0[state[j]] + gamma_1 u[j], sigma_a)
//   y[i]       ~ N(a[county[i]] + beta x[i], sigma_y)
//
// States, counties and homes are the axes State, County and Home; homes are
// the observation rows of dataset Data.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geist/check/diagnostic.hpp"

namespace geist::runtime {

struct RadonConfig {
  std::size_t n_states = 2;
  std::size_t n_counties = 5;
  std::size_t n_homes = 50;
  std::uint64_t seed = 0;

  double eta_0 = 1.3;
  double eta_1 = 0.5;
  double sigma_s = 0.3;
  double gamma_1 = 0.7;
  double sigma_a = 0.2;
  double beta = -0.6;
  double sigma_y = 0.8;

  /// Throws Error(ConfigError) unless 1 <= S <= J <= N and every sigma > 0.
  void validate() const;
};

struct RadonData {
  std::vector<std::size_t> state_of_county;  // length J, entries < S
  std::vector<std::size_t> county_of_home;   // length N, entries < J
  std::vector<std::size_t> state_of_home;    // state_of_county[county_of_home[i]]
  std::vector<std::size_t> home_idx;         // 0..N-1
  std::vector<double> v_state;               // length S
  std::vector<double> gamma_0;               // length S
  std::vector<double> u;                     // length J
  std::vector<double> a;                     // length J
  std::vector<double> x;                     // length N, 0 or 1
  std::vector<double> y;                     // length N
};

/// Draws assignments and data. Every state has a county and every county a
/// home. Deterministic in `config.seed`.
RadonData generate_radon(const RadonConfig& config);

/// Program text reading the CSV files written by write_radon.
std::string radon_program(const RadonConfig& config);

/// Writes radon.geist and its data files into `dir` (created if missing).
/// Returns the program path.
std::filesystem::path write_radon(const RadonConfig& config, const RadonData& data,
                                  const std::filesystem::path& dir);

/// The likelihood gather with county_idx replaced by another index array.
struct Transposition {
  std::string replacement;
  bool in_bounds = false;        // every replacement entry indexes a county
  bool effects_differ = false;   // some row reads a different county effect
  std::vector<std::string> codes;  // static error codes
  bool shape_caught = false;
  std::string runtime_code;
  std::optional<double> loglik_delta;
};

struct RadonRun {
  RadonConfig config;
  std::filesystem::path program_path;
  std::vector<check::Diagnostic> diagnostics;
  double loglik = 0.0;
  std::vector<std::pair<std::string, double>> observes;
  std::vector<Transposition> transpositions;
};

/// Generates, writes, checks and evaluates the model, then force-evaluates
/// the transposed variants. Throws Error(ConfigError) for a bad config.
RadonRun run_radon_demo(const RadonConfig& config, const std::filesystem::path& dir);

std::string format_radon_report(const RadonRun& run);

}  // namespace geist::runtime
