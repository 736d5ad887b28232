#pragma once

// Reproducible random numbers for synthetic data. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// derived draws below are written out explicitly (the std distributions are
// implementation-defined), so generated data is byte-identical everywhere.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace geist::runtime {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased by rejection. n must be > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  /// Standard normal by the Box-Muller transform (one draw per call).
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  /// Fisher-Yates, last element first.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geist::runtime
