#include "geist/runtime/radon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "geist/check/checker.hpp"
#include "geist/error.hpp"
#include "geist/lang/parser.hpp"
#include "geist/runtime/data_io.hpp"
#include "geist/runtime/eval.hpp"
#include "geist/runtime/mutate.hpp"
#include "geist/runtime/rng.hpp"

namespace geist::runtime {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::ConfigError, message);
}

// A surjective assignment of `n` items onto `levels` groups.
std::vector<std::size_t> assign_onto(Rng& rng, std::size_t n, std::size_t levels) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i < levels ? i : rng.below(levels);
  rng.shuffle(std::span<std::size_t>(out));
  return out;
}

std::string num(double v) { return lang::format_number(v, false); }

}  // namespace

void RadonConfig::validate() const {
  require(n_states >= 1, "--states must be at least 1");
  require(n_states <= n_counties, "--states must not exceed --counties");
  require(n_counties <= n_homes, "--counties must not exceed --homes");
  require(sigma_s > 0 && sigma_a > 0 && sigma_y > 0, "every sigma must be positive");
}

RadonData generate_radon(const RadonConfig& config) {
  config.validate();
  Rng rng(config.seed);
  RadonData d;
  const std::size_t S = config.n_states, J = config.n_counties, N = config.n_homes;

  d.state_of_county = assign_onto(rng, J, S);
  d.county_of_home = assign_onto(rng, N, J);
  d.state_of_home.resize(N);
  for (std::size_t i = 0; i < N; ++i) d.state_of_home[i] = d.state_of_county[d.county_of_home[i]];
  d.home_idx.resize(N);
  std::iota(d.home_idx.begin(), d.home_idx.end(), std::size_t{0});

  d.v_state.resize(S);
  d.gamma_0.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    d.v_state[s] = rng.normal();
    d.gamma_0[s] = config.eta_0 + config.eta_1 * d.v_state[s] + config.sigma_s * rng.normal();
  }
  d.u.resize(J);
  d.a.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    d.u[j] = rng.normal();
    d.a[j] = d.gamma_0[d.state_of_county[j]] + config.gamma_1 * d.u[j] +
             config.sigma_a * rng.normal();
  }
  d.x.resize(N);
  d.y.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    d.x[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
    d.y[i] = d.a[d.county_of_home[i]] + config.beta * d.x[i] + config.sigma_y * rng.normal();
  }
  return d;
}

std::string radon_program(const RadonConfig& c) {
  std::ostringstream p;
  p << "# Three-level radon model: homes in counties in states.\n"
    << "dataset Data obs " << c.n_homes << "\n"
    << "axis State size " << c.n_states << "\n"
    << "axis County size " << c.n_counties << "\n"
    << "axis Home size " << c.n_homes << "\n\n"
    << "map state_of_county : State -> County in Data from \"state_of_county.csv\"\n"
    << "map county_of_home : County -> Home in Data from \"county_idx.csv\"\n\n"
    << "idx county_idx : County in Data from \"county_idx.csv\"\n"
    << "idx state_obs_idx : State in Data from \"state_obs_idx.csv\"\n"
    << "idx home_idx : Home in Data from \"home_idx.csv\"\n\n"
    << "vec v_state : State from \"v_state.csv\"\n"
    << "vec gamma_0 : State from \"gamma_0.csv\"\n"
    << "vec u : County from \"u.csv\"\n"
    << "vec a : County from \"a.csv\"\n"
    << "vec x : Data from \"x.csv\"\n"
    << "vec y : Data from \"y.csv\"\n\n"
    << "let eta_0 : Scalar = " << num(c.eta_0) << "\n"
    << "let eta_1 : Scalar = " << num(c.eta_1) << "\n"
    << "let sigma_s : Scalar = " << num(c.sigma_s) << "\n"
    << "let gamma_1 : Scalar = " << num(c.gamma_1) << "\n"
    << "let sigma_a : Scalar = " << num(c.sigma_a) << "\n"
    << "let b : Scalar = " << num(c.beta) << "\n"
    << "let sigma_y : Scalar = " << num(c.sigma_y) << "\n\n"
    << "observe gamma_0 ~ normal(eta_0 + eta_1 * v_state, sigma_s)\n"
    << "let gamma_0_county : Vec[County] = lift(gamma_0, County)\n"
    << "observe a ~ normal(gamma_0_county + gamma_1 * u, sigma_a)\n\n"
    << "let county_effects : Obs[Data] = gather(a, county_idx)\n"
    << "let mu : Obs[Data] = county_effects + b * x\n"
    << "observe y ~ normal(mu, sigma_y)\n\n"
    << "check reindex(state_of_county, county_idx) : Idx[State, Data]\n"
    << "check gather(gamma_0, state_obs_idx) : Obs[Data]\n"
    << "check gather(lift(a, Home), home_idx) : Obs[Data]\n";
  return p.str();
}

std::filesystem::path write_radon(const RadonConfig& config, const RadonData& d,
                                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_column(dir / "state_of_county.csv", "state_of_county", d.state_of_county);
  write_column(dir / "county_idx.csv", "county_idx", d.county_of_home);
  write_column(dir / "state_obs_idx.csv", "state_obs_idx", d.state_of_home);
  write_column(dir / "home_idx.csv", "home_idx", d.home_idx);
  write_column(dir / "v_state.csv", "v_state", d.v_state);
  write_column(dir / "gamma_0.csv", "gamma_0", d.gamma_0);
  write_column(dir / "u.csv", "u", d.u);
  write_column(dir / "a.csv", "a", d.a);
  write_column(dir / "x.csv", "x", d.x);
  write_column(dir / "y.csv", "y", d.y);
  const auto path = dir / "radon.geist";
  std::ofstream out(path);
  out << radon_program(config);
  if (!out) throw DataFileError("cannot write " + path.string());
  return path;
}

RadonRun run_radon_demo(const RadonConfig& config, const std::filesystem::path& dir) {
  const RadonData data = generate_radon(config);
  RadonRun run;
  run.config = config;
  run.program_path = write_radon(config, data, dir);

  auto parsed = lang::parse_source(radon_program(config), run.program_path.string());
  if (!parsed.ok()) throw std::logic_error("generated radon program does not parse");
  run.diagnostics = check::check_program(parsed.program);
  if (check::has_errors(run.diagnostics)) {
    throw std::logic_error("generated radon program does not type-check");
  }

  const EvalReport report = evaluate(parsed.program, dir, EvalMode::Checked);
  run.loglik = report.total_loglik;
  for (const auto& o : report.observes) run.observes.emplace_back(o.name, o.loglik);

  const std::pair<const char*, const std::vector<std::size_t>*> variants[] = {
      {"state_obs_idx", &data.state_of_home},
      {"home_idx", &data.home_idx},
  };
  for (const auto& [name, entries] : variants) {
    Transposition t;
    t.replacement = name;
    t.in_bounds = std::all_of(entries->begin(), entries->end(),
                              [&](std::size_t e) { return e < config.n_counties; });
    if (t.in_bounds) {
      for (std::size_t i = 0; i < entries->size(); ++i) {
        if (data.a[(*entries)[i]] != data.a[data.county_of_home[i]]) t.effects_differ = true;
      }
    }
    const auto mutated = replace_gather_index(parsed.program, "county_idx", name);
    for (const auto& d : check::check_program(mutated)) {
      if (d.severity == check::Severity::Error) t.codes.push_back(d.code);
    }
    const ForcedOutcome forced = force_evaluate(mutated, dir, run.loglik);
    t.shape_caught = forced.rejected;
    if (forced.rejected) {
      t.runtime_code = forced.code;
    } else {
      t.loglik_delta = forced.delta;
    }
    run.transpositions.push_back(std::move(t));
  }
  return run;
}

std::string format_radon_report(const RadonRun& run) {
  const auto& c = run.config;
  std::ostringstream out;
  out << "radon demo: states=" << c.n_states << " counties=" << c.n_counties
      << " homes=" << c.n_homes << " seed=" << c.seed << "\n";
  out << "program: " << run.program_path.string() << "\n";
  out << "check: Success: no issues found\n";
  for (const auto& [name, ll] : run.observes) {
    out << "observe " << name << ": loglik " << format_double(ll) << "\n";
  }
  out << "total loglik: " << format_double(run.loglik) << "\n";

  std::size_t caught = 0, shape = 0, silent = 0, unchanged = 0;
  for (const auto& t : run.transpositions) {
    out << "transposition county_idx -> " << t.replacement << ":\n";
    out << "  static: ";
    if (t.codes.empty()) {
      out << "missed\n";
    } else {
      ++caught;
      for (std::size_t i = 0; i < t.codes.size(); ++i) out << (i ? "," : "") << t.codes[i];
      out << "\n";
    }
    out << "  unchecked eval: ";
    if (t.shape_caught) {
      ++shape;
      out << "rejected " << t.runtime_code << "\n";
    } else if (std::fabs(*t.loglik_delta) > kNoChangeTolerance) {
      ++silent;
      out << "passes shape check, silent loglik delta " << format_double(*t.loglik_delta) << "\n";
    } else {
      ++unchanged;
      out << "passes shape check, loglik unchanged\n";
    }
  }
  out << "summary: " << run.transpositions.size() << " variants, " << caught
      << " statically caught, " << shape << " shape caught, " << silent << " silent, "
      << unchanged << " unchanged\n";
  return out.str();
}

}  // namespace geist::runtime
