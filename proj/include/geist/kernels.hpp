#pragma once

// Raw numeric kernels behind the typed operations. Each kernel has a serial
// reference in `geist::kernels::serial` and an OpenMP version in
// `geist::kernels::parallel`; the typed layer calls the parallel ones. The
// serial versions are kept for tests and the benchmark.
//
// All kernels assume their preconditions (matching lengths, in-range
// indices). Validation lives in the typed layer.

#include <cstddef>
#include <span>

namespace geist {

using Index = std::size_t;

namespace kernels {

/// Below this many elements the parallel kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = 1U << 14;

/// Block length for the deterministic parallel reduction. Partial sums are
/// formed per fixed block and combined in block order, so the result does
/// not depend on the thread count.
inline constexpr std::size_t kReductionBlock = 4096;

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// One term of the Normal log-density.
double normal_logpdf(double x, double mean, double sigma) noexcept;

namespace serial {

// out[i] = src[idx[i]]
void take(std::span<const double> src, std::span<const Index> idx, std::span<double> out);
void take(std::span<const Index> src, std::span<const Index> idx, std::span<Index> out);

// Largest entry plus one (0 for empty input); used for bounds validation.
Index index_bound(std::span<const Index> idx) noexcept;

void add(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void add_scalar(std::span<const double> a, double s, std::span<double> out);
void multiply_scalar(std::span<const double> a, double s, std::span<double> out);

// Sum over i of normal_logpdf(obs[i], mean[i], sigma), compensated, in input order.
double normal_loglik(std::span<const double> obs, std::span<const double> mean, double sigma);

}  // namespace serial

namespace parallel {

void take(std::span<const double> src, std::span<const Index> idx, std::span<double> out);
void take(std::span<const Index> src, std::span<const Index> idx, std::span<Index> out);

Index index_bound(std::span<const Index> idx) noexcept;

void add(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void add_scalar(std::span<const double> a, double s, std::span<double> out);
void multiply_scalar(std::span<const double> a, double s, std::span<double> out);

double normal_loglik(std::span<const double> obs, std::span<const double> mean, double sigma);

}  // namespace parallel

}  // namespace kernels
}  // namespace geist
