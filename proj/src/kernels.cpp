#include "geist/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace geist::kernels {

namespace {

// 0.5 * ln(2*pi)
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

template <typename T>
void take_serial(std::span<const T> src, std::span<const Index> idx, std::span<T> out) {
  const std::size_t n = idx.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = src[idx[i]];
}

template <typename T>
void take_parallel(std::span<const T> src, std::span<const Index> idx, std::span<T> out) {
  const auto n = static_cast<std::ptrdiff_t>(idx.size());
  const T* s = src.data();
  const Index* ix = idx.data();
  T* o = out.data();
#pragma omp parallel for schedule(static) if (idx.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) o[i] = s[ix[i]];
}

template <typename Op>
void binary_parallel(std::span<const double> a, std::span<const double> b, std::span<double> out,
                     Op op) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = op(a[i], b[i]);
}

template <typename Op>
void unary_parallel(std::span<const double> a, std::span<double> out, Op op) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = op(a[i]);
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double normal_logpdf(double x, double mean, double sigma) noexcept {
  const double z = (x - mean) / sigma;
  return -kHalfLogTwoPi - std::log(sigma) - 0.5 * z * z;
}

namespace serial {

void take(std::span<const double> src, std::span<const Index> idx, std::span<double> out) {
  take_serial(src, idx, out);
}

void take(std::span<const Index> src, std::span<const Index> idx, std::span<Index> out) {
  take_serial(src, idx, out);
}

Index index_bound(std::span<const Index> idx) noexcept {
  Index bound = 0;
  for (Index v : idx) bound = std::max(bound, v + 1);
  return bound;
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void add_scalar(std::span<const double> a, double s, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s;
}

void multiply_scalar(std::span<const double> a, double s, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
}

double normal_loglik(std::span<const double> obs, std::span<const double> mean, double sigma) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < obs.size(); ++i) acc.add(normal_logpdf(obs[i], mean[i], sigma));
  return acc.value();
}

}  // namespace serial

namespace parallel {

void take(std::span<const double> src, std::span<const Index> idx, std::span<double> out) {
  take_parallel(src, idx, out);
}

void take(std::span<const Index> src, std::span<const Index> idx, std::span<Index> out) {
  take_parallel(src, idx, out);
}

Index index_bound(std::span<const Index> idx) noexcept {
  const auto n = static_cast<std::ptrdiff_t>(idx.size());
  Index bound = 0;
#pragma omp parallel for schedule(static) reduction(max : bound) if (idx.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) bound = std::max(bound, idx[i] + 1);
  return bound;
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  binary_parallel(a, b, out, [](double x, double y) { return x + y; });
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  binary_parallel(a, b, out, [](double x, double y) { return x * y; });
}

void add_scalar(std::span<const double> a, double s, std::span<double> out) {
  unary_parallel(a, out, [s](double x) { return x + s; });
}

void multiply_scalar(std::span<const double> a, double s, std::span<double> out) {
  unary_parallel(a, out, [s](double x) { return x * s; });
}

double normal_loglik(std::span<const double> obs, std::span<const double> mean, double sigma) {
  const std::size_t n = obs.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<CompensatedSum> partial(blocks);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    for (std::size_t i = begin; i < end; ++i) {
      partial[b].add(normal_logpdf(obs[i], mean[i], sigma));
    }
  }
  CompensatedSum total;
  for (const auto& p : partial) total.add(p.value());
  return total.value();
}

}  // namespace parallel

}  // namespace geist::kernels
