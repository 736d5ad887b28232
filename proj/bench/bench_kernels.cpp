// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "geist/kernels.hpp"

namespace k = geist::kernels;

namespace {

struct Inputs {
  std::vector<double> values;
  std::vector<double> other;
  std::vector<geist::Index> idx;
  std::vector<double> out;
};

Inputs make_inputs(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<geist::Index> pick(0, n - 1);
  Inputs in;
  in.values.resize(n);
  in.other.resize(n);
  in.idx.resize(n);
  in.out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.values[i] = z(rng);
    in.other[i] = z(rng);
    in.idx[i] = pick(rng);
  }
  return in;
}

template <auto Take>
void BM_take(benchmark::State& state) {
  auto in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Take(std::span<const double>(in.values), std::span<const geist::Index>(in.idx), std::span<double>(in.out));
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Loglik>
void BM_loglik(benchmark::State& state) {
  auto in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Loglik(in.values, in.other, 1.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Add>
void BM_add(benchmark::State& state) {
  auto in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Add(in.values, in.other, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

using TakeFn = void (*)(std::span<const double>, std::span<const geist::Index>, std::span<double>);
constexpr TakeFn serial_take = k::serial::take;
constexpr TakeFn parallel_take = k::parallel::take;

}  // namespace

BENCHMARK(BM_take<serial_take>)->Name("take/serial")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_take<parallel_take>)->Name("take/parallel")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_loglik<k::serial::normal_loglik>)->Name("normal_loglik/serial")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_loglik<k::parallel::normal_loglik>)->Name("normal_loglik/parallel")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_add<k::serial::add>)->Name("add/serial")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_add<k::parallel::add>)->Name("add/parallel")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);

BENCHMARK_MAIN();
