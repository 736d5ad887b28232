#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "geist/kernels.hpp"
#include "support.hpp"

using namespace geist;
using namespace geist::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 3.0);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<Index> random_indices(std::size_t n, std::size_t bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> dist(0, bound - 1);
  std::vector<Index> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

}  // namespace

TEST_CASE("normal_logpdf at the mean with unit sigma is -0.5 ln(2 pi)") {
  CHECK(normal_logpdf(0.0, 0.0, 1.0) == doctest::Approx(-0.918938533204673).epsilon(1e-15));
  CHECK(normal_logpdf(3.0, 1.0, 2.0) ==
        doctest::Approx(testsupport::normal_term(3.0, 1.0, 2.0)).epsilon(1e-15));
}

TEST_CASE("compensated sum recovers small terms lost by naive summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));

  CompensatedSum t;
  t.add(1e100);
  t.add(1.0);
  t.add(-1e100);
  CHECK(t.value() == 1.0);
}

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  // Sizes straddle the parallel threshold and the reduction block.
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, kReductionBlock - 1, kReductionBlock + 3,
                        kParallelThreshold + 5, 3 * kParallelThreshold + 11}) {
    CAPTURE(n);
    const auto a = random_values(n, n);
    const auto b = random_values(n, n + 1);
    const auto idx = random_indices(n, 97, n + 2);
    const auto src = random_values(97, n + 3);

    std::vector<double> s(n), p(n);
    serial::take(src, idx, s);
    parallel::take(src, idx, p);
    CHECK(s == p);

    std::vector<Index> si(n), pi(n);
    const auto isrc = random_indices(97, 1000, n + 4);
    serial::take(isrc, idx, si);
    parallel::take(isrc, idx, pi);
    CHECK(si == pi);

    CHECK(serial::index_bound(idx) == parallel::index_bound(idx));

    serial::add(a, b, s);
    parallel::add(a, b, p);
    CHECK(s == p);
    serial::multiply(a, b, s);
    parallel::multiply(a, b, p);
    CHECK(s == p);
    serial::add_scalar(a, 0.25, s);
    parallel::add_scalar(a, 0.25, p);
    CHECK(s == p);
    serial::multiply_scalar(a, -1.5, s);
    parallel::multiply_scalar(a, -1.5, p);
    CHECK(s == p);

    const double ls = serial::normal_loglik(a, b, 1.7);
    const double lp = parallel::normal_loglik(a, b, 1.7);
    CHECK(lp == doctest::Approx(ls).epsilon(1e-13));
  }
}

TEST_CASE("parallel loglik is deterministic across calls") {
  const auto a = random_values(5 * kParallelThreshold, 1);
  const auto b = random_values(5 * kParallelThreshold, 2);
  const double first = parallel::normal_loglik(a, b, 0.9);
  for (int i = 0; i < 3; ++i) CHECK(parallel::normal_loglik(a, b, 0.9) == first);
}

TEST_CASE("index_bound is one past the largest entry") {
  CHECK(serial::index_bound(std::vector<Index>{}) == 0);
  CHECK(serial::index_bound(std::vector<Index>{3, 0, 9, 2}) == 10);
  CHECK(parallel::index_bound(std::vector<Index>{3, 0, 9, 2}) == 10);
}
