#include "doctest.h"

#include <cmath>

#include "geist/check/checker.hpp"
#include "geist/runtime/eval.hpp"
#include "support.hpp"

using namespace geist;
using namespace geist::runtime;

namespace {

EvalReport run(const std::string& src, EvalMode mode = EvalMode::Checked,
               const std::filesystem::path& base = ".") {
  return evaluate(testsupport::parse_or_throw(src), base, mode);
}

std::string error_code(const std::string& src, EvalMode mode = EvalMode::Checked,
                       const std::filesystem::path& base = ".") {
  try {
    run(src, mode, base);
  } catch (const EvalError& e) {
    return e.code();
  }
  return "";
}

const LetSummary& let_named(const EvalReport& r, const std::string& name) {
  for (const auto& l : r.lets) {
    if (l.name == name) return l;
  }
  throw std::runtime_error("no let " + name);
}

}  // namespace

TEST_CASE("the two-county example evaluates to the expected mean and likelihood") {
  const auto src = testsupport::read_file(testsupport::corpus_dir() / "lang/eval_example.geist");
  const auto r = run(src);
  CHECK(let_named(r, "mu").values == std::vector<double>{1.0, 1.5, 2.5});
  CHECK(let_named(r, "county_effects").values == std::vector<double>{1.0, 1.0, 2.0});
  CHECK(let_named(r, "b").type == "Scalar");
  CHECK(let_named(r, "mu").type == "Obs[Data]");
  REQUIRE(r.observes.size() == 1);
  const double per_row = -0.5 * std::log(2.0 * M_PI);
  CHECK(r.total_loglik == doctest::Approx(3.0 * per_row).epsilon(1e-15));
  CHECK(r.total_loglik == doctest::Approx(3 * -0.918938533).epsilon(1e-9));
}

TEST_CASE("likelihood of file-backed data matches a direct sum") {
  const auto dir = testsupport::corpus_dir() / "data";
  const auto r = evaluate(testsupport::parse_or_throw(testsupport::read_file(dir / "from_files.geist")),
                          dir);
  auto column = [&](const char* name) {
    std::vector<double> v;
    std::istringstream in(testsupport::read_file(dir / name));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (!line.empty()) v.push_back(std::stod(line));
    }
    return v;
  };
  const auto a = column("a.csv"), x = column("x.csv"), y = column("y.csv");
  const auto ci = column("county_idx.csv");
  double expected_y = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    expected_y += testsupport::normal_term(y[i], a[static_cast<std::size_t>(ci[i])] - 0.6 * x[i], 0.8);
  }
  double expected_a = 0.0;
  for (double v : a) expected_a += testsupport::normal_term(v, 0.0, 1.0);
  REQUIRE(r.observes.size() == 2);
  CHECK(r.observes[0].loglik == doctest::Approx(expected_y).epsilon(1e-13));
  CHECK(r.observes[1].loglik == doctest::Approx(expected_a).epsilon(1e-13));
  CHECK(r.total_loglik == doctest::Approx(expected_y + expected_a).epsilon(1e-13));
}

TEST_CASE("lift through a two-level chain reads the grandparent effect") {
  const auto r = run(
      "dataset D obs 4\naxis S size 2\naxis C size 3\naxis H size 4\n"
      "map sc : S -> C in D = [1, 0, 1]\nmap ch : C -> H in D = [2, 2, 0, 1]\n"
      "vec g : S = [10, 20]\nlet gh : Vec[H] = lift(g, H)\nlet gc : Vec[C] = lift(g, C)\n");
  CHECK(let_named(r, "gc").values == std::vector<double>{20, 10, 20});
  CHECK(let_named(r, "gh").values == std::vector<double>{20, 20, 20, 10});
}

TEST_CASE("reindex composes a map with an index array") {
  const auto r = run(
      "dataset D obs 3\naxis S size 2\naxis C size 3\n"
      "map sc : S -> C in D = [1, 0, 1]\nidx ci : C in D = [2, 0, 1]\nvec g : S = [5, 7]\n"
      "let e : Obs[D] = gather(g, reindex(sc, ci))\n");
  CHECK(let_named(r, "e").values == std::vector<double>{7, 7, 5});
}

TEST_CASE("load-time validation names the file position") {
  const auto dir = testsupport::corpus_dir() / "data";
  auto fail = [&](const char* file) -> EvalError {
    try {
      evaluate(testsupport::parse_or_throw(testsupport::read_file(dir / file)), dir);
    } catch (const EvalError& e) {
      return e;
    }
    FAIL("expected an EvalError");
    return EvalError("", {}, "");
  };
  const auto bounds = fail("bounds_error.geist");
  CHECK(bounds.code() == "E201");
  CHECK(std::string(bounds.what()) ==
        "county_idx_oob.csv:4: index 5 is out of range [0, 3) for axis \"County\"");
  CHECK(bounds.is_load_error());
  const auto length = fail("length_error.geist");
  CHECK(length.code() == "E202");
  CHECK(std::string(length.what()).find("a_long.csv") != std::string::npos);
  CHECK(std::string(length.what()).find("expects 3 entries, found 4") != std::string::npos);
  CHECK(fail("malformed_cell.geist").code() == "E206");
  CHECK(fail("missing_file.geist").code() == "E206");
  const auto sigma = fail("sigma_domain.geist");
  CHECK(sigma.code() == "E210");
  CHECK_FALSE(sigma.is_load_error());
}

TEST_CASE("inline data is validated like file data") {
  CHECK(error_code("dataset D obs 2\naxis K size 2\nidx i : K in D = [0, 2]\n") == "E201");
  CHECK(error_code("dataset D obs 2\naxis K size 2\nidx i : K in D = [0]\n") == "E202");
  CHECK(error_code("dataset D obs 2\naxis K size 2\nvec v : K = [1, 2, 3]\n") == "E202");
  CHECK(error_code("dataset D obs 2\naxis K size 2\nidx i : K in D = [0, 1.5]\n") == "E206");
  CHECK(error_code("dataset D obs 2\naxis K size 2\nidx i : K in D = [0, -1]\n") == "E206");
  CHECK(error_code("dataset D obs 1\naxis S size 2\naxis C size 2\n"
                   "map m : S -> C in D = [0, 3]\n") == "E201");
}

TEST_CASE("evaluating a symbolic vector is E207") {
  const auto src = testsupport::read_file(testsupport::corpus_dir() / "lang/symbolic_vec.geist");
  CHECK(check::check_program(testsupport::parse_or_throw(src)).empty());
  CHECK(error_code(src) == "E207");
}

TEST_CASE("registry errors surface at load") {
  CHECK(error_code("dataset D obs 1\naxis S size 2\naxis C size 2\n"
                   "map f : S -> C in D = [0, 1]\nmap g : C -> S in D = [0, 1]\n") == "E204");
  CHECK(error_code("dataset D obs 1\naxis S size 2\naxis C size 2\n"
                   "map f : S -> C in D = [0, 1]\nmap g : S -> C in D = [1, 0]\n") == "E203");
}

TEST_CASE("checked mode rejects what unchecked mode computes") {
  const std::string src =
      "dataset D obs 3\naxis C size 3\naxis H size 3\n"
      "idx ci : C in D = [0, 1, 2]\nidx hi : H in D = [2, 1, 0]\n"
      "vec a : C = [1, 2, 3]\nvec y : D = [1, 2, 3]\n"
      "let e = gather(a, hi)\nobserve y ~ normal(e, 1)\n";
  CHECK(error_code(src, EvalMode::Checked) == "E209");
  const auto r = run(src, EvalMode::Unchecked);
  CHECK(let_named(r, "e").values == std::vector<double>{3, 2, 1});
}

TEST_CASE("unchecked mode still enforces lengths and bounds") {
  const std::string src =
      "dataset D obs 3\naxis C size 2\naxis H size 3\n"
      "idx hi : H in D = [2, 1, 0]\nvec a : C = [1, 2]\n"
      "let e = gather(a, hi)\n";
  CHECK(error_code(src, EvalMode::Unchecked) == "E208");
  CHECK(error_code("dataset D obs 3\naxis C size 2\nvec a : C = [1, 2]\nvec y : D = [1, 2, 3]\n"
                   "observe y ~ normal(a, 1)\n",
                   EvalMode::Unchecked) == "E208");
}

TEST_CASE("checked and unchecked agree on well-typed random programs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto prog = testsupport::generate_program(seed);
    testsupport::ScratchDir dir("eval_agree");
    const auto path = prog.write(dir.path());
    const auto p = testsupport::parse_or_throw(testsupport::read_file(path));
    const auto checked = evaluate(p, dir.path(), EvalMode::Checked);
    const auto unchecked = evaluate(p, dir.path(), EvalMode::Unchecked);
    CAPTURE(seed);
    CHECK(format_report(checked, true) == format_report(unchecked, true));
    CHECK(std::isfinite(checked.total_loglik));
  }
}

TEST_CASE("report formatting") {
  EvalReport r;
  r.lets.push_back({"b", "Scalar", 1, {0.5}});
  r.lets.push_back({"mu", "Obs[Data]", 2, {1.0, 0.1}});
  r.observes.push_back({"y", -1.5});
  r.total_loglik = -1.5;
  CHECK(format_report(r) ==
        "let b : Scalar = 0.5\nlet mu : Obs[Data] (length 2)\nobserve y : loglik = -1.5\n"
        "total loglik = -1.5\n");
  CHECK(format_report(r, true).find("let mu : Obs[Data] (length 2) = [1, 0.1]") != std::string::npos);
}
