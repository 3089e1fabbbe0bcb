#include <benchmark/benchmark.h>

#include <array>
#include <cmath>
#include <vector>

#include "talbot/evolve.hpp"
#include "talbot/experiments.hpp"
#include "talbot/expsum.hpp"
#include "talbot/fractal.hpp"
#include "talbot/gaunt.hpp"
#include "talbot/specialfun.hpp"
#include "talbot/spectra.hpp"
#include "talbot/znls.hpp"

namespace tb = talbot;

static void BM_TorusSynthesis1D(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  const auto f = tb::experiments::step_data(radius);
  const auto t = tb::evolve::TimePoint::sampled(1.0);
  const std::array<std::size_t, 1> sizes{std::size_t(4 * radius)};
  for (auto _ : state) {
    auto field = tb::evolve::evaluate_torus(tb::evolve::propagate_torus(f, t), sizes);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetComplexityN(radius);
}
BENCHMARK(BM_TorusSynthesis1D)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();

static void BM_PolygonSpectrum(benchmark::State& state) {
  const auto tri = tb::experiments::default_triangle();
  for (auto _ : state) {
    auto f = tb::spectra::torus_polygon_indicator(tri, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_PolygonSpectrum)->Arg(64)->Arg(256);

static void BM_BoxCountCurve(benchmark::State& state) {
  std::vector<double> s(std::size_t(1) << 16);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(0.37 * double(i)) + std::cos(1e-3 * double(i * i));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tb::fractal::box_count_curve(s, k));
}
BENCHMARK(BM_BoxCountCurve)->DenseRange(5, 11, 3);

static void BM_JacobiRecurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tb::specialfun::zonal_harmonic(n, 2, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_JacobiRecurrence)->Arg(64)->Arg(512)->Arg(4096);

static void BM_WeylBlockSup(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto w = tb::expsum::power_weights(N, 1.5);
  const auto t = tb::evolve::TimePoint::sampled(2.3);
  for (auto _ : state) benchmark::DoNotOptimize(tb::expsum::weyl_block_sup(t, N, w).sup);
}
BENCHMARK(BM_WeylBlockSup)->RangeMultiplier(4)->Range(16, 1024);

static void BM_Kappa4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int idx[4] = {n, n / 2, n / 3, n / 4};
  for (auto _ : state) benchmark::DoNotOptimize(tb::gaunt::kappa(idx, 2));
}
BENCHMARK(BM_Kappa4)->Arg(16)->Arg(64)->Arg(256);

static void BM_NLSStep(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const tb::znls::NLSSolver solver(2, n_max);
  tb::znls::NLSState s;
  s.a = tb::spectra::zonal_decay_family(1.1, n_max);
  for (auto _ : state) {
    s = solver.step_strang(s, 1e-3);
    benchmark::DoNotOptimize(s.a.coeffs.data());
  }
}
BENCHMARK(BM_NLSStep)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
