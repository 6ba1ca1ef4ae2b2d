#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "patternfront/kernels.hpp"
#include "patternfront/pde.hpp"
#include "patternfront/periodic.hpp"
#include "patternfront/spectral.hpp"

using namespace patternfront;

namespace {

std::vector<double> reals(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<cplx> complexes(std::size_t n, unsigned seed) {
  const auto r = reals(2 * n, seed);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {r[2 * i], r[2 * i + 1]};
  return v;
}

template <bool Parallel>
void full_nonlinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = reals(n, 1), v = reals(n, 2);
  std::vector<double> p(n), q(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::full_nonlinear_omp(u, v, p, q);
    else
      kernels::full_nonlinear_serial(u, v, p, q);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void combine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c1 = reals(n, 3), c2 = reals(n, 4), c3 = reals(n, 5);
  const auto x = complexes(n, 6), y = complexes(n, 7), z = complexes(n, 8);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::combine_omp(c1, x, c2, y, c3, z, out);
    else
      kernels::combine_serial(c1, x, c2, y, c3, z, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void full_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams p = ModelParams::make(3.0, 7.0, 1.0, 0.1);
  FieldPair f = to_field(newton_refine(leading_order(p, 4)), n, n / 16);
  SimConfig cfg;
  cfg.dt = 0.05;
  cfg.parallel = Parallel;
  FullSystemStepper stepper(f.grid, PdeCoefficients::from(p), cfg);
  for (auto _ : state) stepper.step(f);
  state.SetItemsProcessed(state.iterations() * n);
}

void spectrum_parallel(benchmark::State& state) {
  const ModelParams p = ModelParams::make(3.0, 7.0, 0.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(static_cast<int>(state.range(0)), p));
}

void spectrum_serial(benchmark::State& state) {
  const ModelParams p = ModelParams::make(3.0, 7.0, 0.0, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_spectrum_serial(static_cast<int>(state.range(0)), p));
}

}  // namespace

BENCHMARK(full_nonlinear<false>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(full_nonlinear<true>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(combine<false>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(combine<true>)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(full_step<false>)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->UseRealTime();
BENCHMARK(full_step<true>)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->UseRealTime();
BENCHMARK(spectrum_serial)->Arg(30)->Arg(120)->UseRealTime();
BENCHMARK(spectrum_parallel)->Arg(30)->Arg(120)->UseRealTime();

BENCHMARK_MAIN();
