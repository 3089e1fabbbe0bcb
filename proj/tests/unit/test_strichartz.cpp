#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "talbot/errors.hpp"
#include "talbot/strichartz.hpp"

using namespace talbot::strichartz;
using talbot::spectra::cplx;
using std::numbers::pi;

namespace {

ZonalSpectrum random_zonal(int n_max, std::uint64_t seed) {
  ZonalSpectrum f(2, n_max);
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  for (auto& c : f.coeffs) c = {g(eng), g(eng)};
  return f;
}

// ||P_N e^{it Delta} f||_4 by a uniform t-grid and the sphere-mean oracle.
double l4_oracle(const ZonalSpectrum& f, int N, int t_points) {
  double acc = 0.0;
  for (int k = 0; k < t_points; ++k) {
    const double t = 2 * pi * k / t_points;
    acc += oracle::sphere_mean(2, [&](double th) {
      cplx u = 0.0;
      for (int n = N; n < 2 * N && n <= f.n_max(); ++n) u += f.coeffs[n] * std::polar(1.0, t * n * (n + 1)) * oracle::y2(n, th);
      return std::norm(u) * std::norm(u);
    });
  }
  return std::pow(acc / t_points, 0.25);
}

}  // namespace

TEST_CASE("pair frequency counts") {
  CHECK(alpha_count(1, 1, 4) == 1);
  CHECK(alpha_count(1, 1, 3) == 0);
  CHECK(alpha_count(4, 2, 10) == 0);
  for (auto [N, M] : {std::pair{1, 1}, {4, 2}, {16, 16}, {64, 8}}) {
    const auto dec = pair_decomposition(N, M);
    CHECK(dec.pair_count() == std::size_t(N) * M);
    std::int64_t total = 0, best = 0;
    for (const auto& [tau, pairs] : dec.classes) {
      CHECK(alpha_count(N, M, tau) == std::int64_t(pairs.size()));
      for (auto [n, m] : pairs) CHECK(n * (n + 1) + m * (m + 1) == tau);
      total += std::int64_t(pairs.size());
      best = std::max<std::int64_t>(best, std::int64_t(pairs.size()));
    }
    CHECK(total == std::int64_t(N) * M);
    CHECK(alpha_max(N, M) == best);
  }
  // Well below the trivial bound alpha <= M; values checked by hand enumeration.
  std::vector<double> ms, as, ratio;
  for (int M = 16; M <= 256; M *= 2) {
    const auto a = alpha_max(1024, M);
    ms.push_back(std::log2(M));
    as.push_back(std::log2(double(a)));
    ratio.push_back(double(a) / M);
  }
  CHECK(alpha_max(1024, 256) == 6);
  CHECK(oracle::slope(ms, as) < 0.75);
  for (std::size_t i = 1; i < ratio.size(); ++i) CHECK(ratio[i] <= ratio[i - 1]);
  CHECK(ratio.back() < 0.5 * ratio.front());
}

TEST_CASE("bilinear norms") {
  // Single modes: one tau class, time factor unimodular.
  for (auto [n, m] : {std::pair{5, 2}, {9, 9}, {12, 3}}) {
    ZonalSpectrum f(2, 20), g(2, 20);
    f.coeffs[n] = 1.0;
    g.coeffs[m] = 1.0;
    const int N = 1 << int(std::log2(n)), M = 1 << int(std::log2(m));
    const double expect = std::sqrt(oracle::sphere_mean(2, [&](double t) {
      const double v = oracle::y2(n, t) * oracle::y2(m, t);
      return v * v;
    }));
    CHECK(bilinear_l2(f, g, N, M) == doctest::Approx(expect).epsilon(1e-11));
  }
  const auto f = random_zonal(31, 2);
  CHECK(bilinear_l2(f, ZonalSpectrum(2, 31), 16, 4) == 0.0);
  CHECK(bilinear_l2(f, f, 8, 8) == doctest::Approx(std::pow(l4_norm_spacetime(f, 8), 2)).epsilon(1e-12));
}

TEST_CASE("space-time L4 against brute force") {
  const auto f = random_zonal(31, 5);
  for (int N : {1, 2, 4}) CHECK(l4_norm_spacetime(f, N) == doctest::Approx(l4_oracle(f, N, 4 * 4 * N * (4 * N + 1) + 8)).epsilon(1e-10));
  for (int N : {1, 2, 4, 8, 16})
    CHECK(std::abs(l4_norm_spacetime(f, N) - l4_norm_spacetime_grid(f, N)) < 1e-6 * l4_norm_spacetime(f, N));

  ZonalSpectrum y(2, 10);
  y.coeffs[6] = 1.0;
  const double mean4 = oracle::sphere_mean(2, [](double t) { return std::pow(oracle::y2(6, t), 4); });
  CHECK(std::pow(l4_norm_spacetime(y, 4), 4) == doctest::Approx(mean4).epsilon(1e-12));
  CHECK(l4_norm_spacetime(ZonalSpectrum(2, 10), 4) == 0.0);

  // Holder on a probability space.
  for (int N : {2, 8, 16}) {
    double l2 = 0.0;
    for (int n = N; n < 2 * N; ++n) l2 += std::norm(f.coeffs[n]);
    CHECK(l4_norm_spacetime(f, N) >= std::sqrt(l2));
  }
}

TEST_CASE("Gaussian beams saturate L4") {
  CHECK(l4_norm_beam(0) == doctest::Approx(1.0).epsilon(1e-14));
  // |Y_1^1|^2 = (3/2) sin^2: mean of (9/4) sin^4 is 6/5.
  CHECK(l4_norm_beam(1) == doctest::Approx(1.2).epsilon(1e-13));
  CHECK(l4_norm_beam_closed_form(1) == doctest::Approx(1.2).epsilon(1e-13));
  std::vector<double> ns, vs;
  for (int n = 8; n <= 512; n *= 2) {
    CHECK(l4_norm_beam(n) == doctest::Approx(l4_norm_beam_closed_form(n)).epsilon(1e-10));
    ns.push_back(std::log2(n));
    vs.push_back(std::log2(l4_norm_beam(n)));
  }
  CHECK(oracle::slope(ns, vs) == doctest::Approx(0.5).epsilon(0.2));
  CHECK_THROWS_AS(l4_norm_beam(-1), talbot::DomainError);
}
