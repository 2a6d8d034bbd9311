// Serial reference kernels against their OpenMP and transform counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "ptgs/kernels.hpp"
#include "ptgs/search.hpp"

using namespace ptgs;

namespace {

kernels::Coeffs random_coeffs(std::int64_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  kernels::Coeffs c(n, 0);
  for (auto& x : c)
    if (keep(rng)) x = static_cast<std::int64_t>(rng() % 5) - 2;
  return c;
}

void BM_CyclicSerial(benchmark::State& st) {
  auto a = random_coeffs(st.range(0), 0.5, 1), b = random_coeffs(st.range(0), 0.5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cyclic_convolve_serial(a, b));
}

void BM_CyclicParallel(benchmark::State& st) {
  auto a = random_coeffs(st.range(0), 0.5, 1), b = random_coeffs(st.range(0), 0.5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cyclic_convolve_parallel(a, b));
}

void BM_CyclicNtt(benchmark::State& st) {
  auto a = random_coeffs(st.range(0), 0.5, 1), b = random_coeffs(st.range(0), 0.5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cyclic_convolve_ntt(a, b));
}

// range(0) = degree m over F_3.
void BM_AdditiveSerial(benchmark::State& st) {
  auto F = cached_field(3, static_cast<int>(st.range(0)));
  auto a = random_coeffs(F->order(), 0.5, 3), b = random_coeffs(F->order(), 0.5, 4);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::additive_convolve_serial(*F, a, b));
}

void BM_AdditiveParallel(benchmark::State& st) {
  auto F = cached_field(3, static_cast<int>(st.range(0)));
  auto a = random_coeffs(F->order(), 0.5, 3), b = random_coeffs(F->order(), 0.5, 4);
  kernels::ConvolutionPolicy gather;
  gather.additive_transform_threshold = F->order() + 1;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::additive_convolve(*F, a, b, gather));
}

void BM_AdditiveTransform(benchmark::State& st) {
  auto F = cached_field(3, static_cast<int>(st.range(0)));
  auto a = random_coeffs(F->order(), 0.5, 3), b = random_coeffs(F->order(), 0.5, 4);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::additive_convolve_transform(*F, a, b));
}

// Galois-invariant space of (p,1,3): Gray-code residue sweep against the
// from-scratch reference.
void BM_GraySweep(benchmark::State& st) {
  auto space = search::galois_space(Tower{static_cast<int>(st.range(0)), 1, 3});
  search::Options o;
  o.post_verify = false;
  o.parallel = st.range(1) != 0;
  o.shards = o.parallel ? 4 : 1;
  for (auto _ : st) benchmark::DoNotOptimize(search::run_space(space, o));
}

void BM_ReferenceSweep(benchmark::State& st) {
  auto space = search::galois_space(Tower{static_cast<int>(st.range(0)), 1, 3});
  for (auto _ : st) benchmark::DoNotOptimize(search::reference_sweep(space));
}

}  // namespace

BENCHMARK(BM_CyclicSerial)->Arg(1093)->Arg(3280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CyclicParallel)->Arg(1093)->Arg(3280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CyclicNtt)->Arg(1093)->Arg(3280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdditiveSerial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdditiveParallel)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdditiveTransform)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraySweep)->Args({5, 0})->Args({5, 1})->Args({7, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceSweep)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
