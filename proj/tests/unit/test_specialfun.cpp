#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "talbot/errors.hpp"
#include "talbot/specialfun.hpp"

using namespace talbot::specialfun;
using std::numbers::pi;

TEST_CASE("sphere constants") {
  CHECK(SphereConstants(2).omega() == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(SphereConstants(3).omega() == doctest::Approx(2 * pi * pi).epsilon(1e-14));
  CHECK(SphereConstants(2).omega_lower() == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(sphere_volume(1) == doctest::Approx(2 * pi));
  CHECK_THROWS_AS(SphereConstants(1), talbot::DomainError);
}

TEST_CASE("harmonic index invariants") {
  CHECK_NOTHROW(HarmonicIndex(3, -3, 2));
  CHECK_THROWS(HarmonicIndex(3, 4, 2));
  CHECK_THROWS(HarmonicIndex(3, 1, 3));
}

TEST_CASE("jacobi_symmetric small degrees") {
  CHECK(jacobi_symmetric(0, 2, 0.3) == 1.0);
  CHECK(jacobi_symmetric(1, 2, 0.5) == 0.5);
  CHECK(jacobi_symmetric(2, 2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi_symmetric(2, 2, 1.5), talbot::DomainError);
  // d = 2 is Legendre throughout.
  for (int n : {3, 7, 40, 200})
    for (double x : {-0.9, -0.2, 0.0, 0.45, 0.99})
      CHECK(jacobi_symmetric(n, 2, x) == doctest::Approx(oracle::legendre(n, x)).epsilon(1e-11));
}

TEST_CASE("zonal kernel values at tau = 1") {
  CHECK(zonal_kernel(0, 2, 0.7) == doctest::Approx(1.0));
  CHECK(zonal_kernel(3, 2, 1.0) == doctest::Approx(7.0).epsilon(1e-13));
  // (n+1)^2 harmonics of degree n on S^3.
  CHECK(zonal_kernel(2, 3, 1.0) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(eigenspace_dimension(2, 3) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(eigenspace_dimension(5, 4) == doctest::Approx(91.0).epsilon(1e-13));

  // Quadrature oracle for Z_n(1) = (1/omega_d) integral Z_n^2.
  for (int d : {2, 3})
    for (int n : {1, 2, 5}) {
      const double norm = oracle::sphere_mean(d, [&](double t) {
        const double z = zonal_kernel(n, d, std::cos(t));
        return z * z;
      });
      CHECK(norm == doctest::Approx(zonal_kernel(n, d, 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("zonal harmonics match closed forms") {
  CHECK(zonal_harmonic(0, 2, 1.1) == doctest::Approx(1.0));
  CHECK(zonal_harmonic(1, 2, 0.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (int n : {0, 1, 5, 17, 64})
    for (double t : {0.0, 0.3, 1.2, pi / 2, 2.9}) {
      CHECK(zonal_harmonic(n, 2, t) == doctest::Approx(oracle::y2(n, t)).epsilon(1e-11));
      CHECK(zonal_harmonic(n, 3, t) == doctest::Approx(oracle::y3(n, t)).epsilon(1e-11));
    }
  CHECK(zonal_harmonic(5, 3, pi / 2) == doctest::Approx(oracle::y3(5, pi / 2)).epsilon(1e-13));
}

TEST_CASE("orthonormality up to degree 48 against an independent quadrature") {
  for (int d : {2, 3}) {
    double worst = 0.0;
    for (int n = 0; n <= 48; ++n)
      for (int m = n; m <= 48; m += 1) {
        const double g = oracle::sphere_mean(d, [&](double t) { return zonal_harmonic(n, d, t) * zonal_harmonic(m, d, t); });
        worst = std::max(worst, std::abs(g - (n == m ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("reproducing property of the zonal kernel on S^2") {
  // (1/4pi) integral Y_m(y) Z_n(<x, y>) dsigma(y) = delta_nm Y_m(x).
  const auto gl = oracle::gauss_legendre(48);
  constexpr int n_phi = 64;
  double worst = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double alpha = pi * (k + 0.5) / 16;
    const double xs[3] = {std::sin(alpha), 0.0, std::cos(alpha)};
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= 6; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
          const double c = gl.x[i], s = std::sqrt(1 - c * c);
          for (int j = 0; j < n_phi; ++j) {
            const double phi = 2 * pi * j / n_phi;
            const double tau = xs[0] * s * std::cos(phi) + xs[2] * c;
            acc += gl.w[i] * zonal_harmonic_cos(m, 2, c) * zonal_kernel(n, 2, std::clamp(tau, -1.0, 1.0));
          }
        }
        acc /= 2.0 * n_phi;
        const double expect = n == m ? zonal_harmonic(m, 2, alpha) : 0.0;
        worst = std::max(worst, std::abs(acc - expect));
      }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("spherical harmonics on S^2") {
  CHECK(std::abs(sph_harmonic_s2(0, 0, 0.4, 1.0) - 1.0) < 1e-15);
  CHECK(std::abs(sph_harmonic_s2(1, 0, 0.0, 0.0) - std::sqrt(3.0)) < 1e-15);
  // P_2^1(x) = -3 x sqrt(1 - x^2), normalization sqrt(5 * 1! / 3!).
  const double x = std::cos(pi / 4);
  const std::complex<double> expect = std::sqrt(5.0 / 6.0) * (-3.0 * x * std::sqrt(1 - x * x)) * std::polar(1.0, pi / 2);
  CHECK(std::abs(sph_harmonic_s2(2, 1, pi / 4, pi / 2) - expect) < 1e-14);
  CHECK_THROWS_AS(sph_harmonic_s2(2, 3, 0.1, 0.1), talbot::IndexError);
  // k = 0 reduces to the zonal harmonic.
  for (int n : {3, 11})
    CHECK(sph_harmonic_s2(n, 0, 0.7, 2.0).real() == doctest::Approx(zonal_harmonic(n, 2, 0.7)).epsilon(1e-12));
}

TEST_CASE("gaussian beams") {
  CHECK(std::abs(gaussian_beam(0, 1, 0.3, 0.2) - 1.0) < 1e-15);
  CHECK(std::abs(gaussian_beam(4, 1, pi / 2, 0.0) - std::sqrt(630.0) / 16.0) < 1e-13);
  // Beams coincide with Y_n^{+-n}.
  for (int n : {1, 2, 5, 9})
    for (int sign : {1, -1})
      CHECK(std::abs(gaussian_beam(n, sign, 1.1, 0.4) - sph_harmonic_s2(n, sign * n, 1.1, 0.4)) < 1e-12);
  // Unit norm: |Y|^2 does not depend on phi.
  for (int n = 0; n <= 32; ++n) {
    const double norm = oracle::sphere_mean(2, [&](double t) { return std::norm(gaussian_beam(n, -1, t, 0.0)); });
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Szego asymptotics") {
  const double exact = jacobi_symmetric(512, 2, std::cos(pi / 2));
  const auto a = jacobi_asymptotic(512, 2, pi / 2);
  CHECK(std::abs(exact - a.value) <= a.remainder_bound);

  const auto b = jacobi_asymptotic(64, 3, 1.0);
  CHECK(std::abs(jacobi_symmetric(64, 3, std::cos(1.0)) - b.value) <= b.remainder_bound);

  const double ratio = jacobi_asymptotic(256, 2, 1.0).remainder_bound / jacobi_asymptotic(128, 2, 1.0).remainder_bound;
  CHECK(ratio == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));

  CHECK_THROWS_AS(jacobi_asymptotic(64, 2, 0.05), talbot::DomainError);
  CHECK_THROWS_AS(jacobi_asymptotic(64, 2, pi - 0.05), talbot::DomainError);

  // d = 2 leading term is sqrt(2 / (pi n sin)) cos((n + 1/2) theta - pi/4).
  const double t = 0.8;
  const double lead = std::sqrt(2.0 / (pi * 100 * std::sin(t))) * std::cos(100.5 * t - pi / 4);
  CHECK(jacobi_asymptotic(100, 2, t).value == doctest::Approx(lead).epsilon(1e-13));
}

TEST_CASE("one remainder constant serves every degree") {
  AsymptoticConfig cfg;
  cfg.remainder = 1.0;
  std::vector<double> constants;
  for (int n : {64, 128, 256, 512}) {
    double c = 0.0;
    for (int k = 0; k <= 2048; ++k) {
      const double t = 8.0 / n + (pi / 2 - 8.0 / n) * k / 2048;
      const auto a = jacobi_asymptotic(n, 2, t, cfg);
      c = std::max(c, std::abs(oracle::legendre(n, std::cos(t)) - a.value) / a.remainder_bound);
    }
    constants.push_back(c);
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  CHECK(*hi / *lo < 1.05);
  CHECK(*hi < 0.3);
}

TEST_CASE("envelope magnitude") {
  CHECK(envelope_magnitude(9, 3, 0.0) == doctest::Approx(9.0));
  CHECK(envelope_magnitude(100, 2, 0.0) == doctest::Approx(10.0));
  CHECK(envelope_magnitude(100, 2, 1.0) == doctest::Approx(10.0 / std::pow(10001.0, 0.25)).epsilon(1e-14));
  CHECK(envelope_magnitude(100, 2, 1.0) == doctest::Approx(0.999975).epsilon(1e-6));

  // sup |Y_n| / envelope, fitted on n <= 256, holds up to 1024.
  constexpr int top = 1024, grid = 4096;
  std::vector<double> norms(top + 1), ys(top + 1), worst(top + 1, 0.0);
  zonal_norms(2, norms);
  for (int k = 0; k <= grid; ++k) {
    const double t = 0.5 * pi * k / grid;
    zonal_harmonics_all(2, std::cos(t), norms, ys);
    for (int n = 1; n <= top; ++n) worst[n] = std::max(worst[n], std::abs(ys[n]) / envelope_magnitude(n, 2, t));
  }
  const double fitted = *std::max_element(worst.begin() + 1, worst.begin() + 257);
  const double rest = *std::max_element(worst.begin() + 257, worst.end());
  CHECK(rest <= 1.05 * fitted);
  CHECK(fitted < 2.0);
}
