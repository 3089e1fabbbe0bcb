#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "oracles.hpp"
#include "talbot/fit.hpp"
#include "talbot/parallel.hpp"
#include "talbot/quadrature.hpp"

using talbot::QuadratureRule;

namespace {

// integral_{-1}^{1} x^k (1 - x^2)^a dx.
double moment(int k, double a) {
  if (k % 2) return 0.0;
  return std::exp(std::lgamma(0.5 * k + 0.5) + std::lgamma(a + 1) - std::lgamma(0.5 * k + a + 1.5));
}

}  // namespace

TEST_CASE("Gauss-Legendre nodes agree with the independent rule") {
  const QuadratureRule rule(40, 2);
  auto gl = oracle::gauss_legendre(40);
  std::vector<std::pair<double, double>> a, b;
  for (std::size_t i = 0; i < 40; ++i) {
    a.emplace_back(rule.nodes()[i], rule.weights()[i]);
    b.emplace_back(gl.x[i], gl.w[i]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(a[i].first == doctest::Approx(b[i].first).epsilon(1e-14));
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Jacobi exactness up to degree 2K - 1") {
  for (int d : {2, 3, 4, 5})
    for (int K : {1, 2, 7, 30}) {
      const QuadratureRule rule(K, d);
      CHECK(rule.exact_degree() == 2 * K - 1);
      const double a = 0.5 * (d - 2);
      for (int k = 0; k <= 2 * K - 1; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights()[i] * std::pow(rule.nodes()[i], k);
        CHECK(acc == doctest::Approx(moment(k, a)).epsilon(1e-12).scale(1.0));
      }
      const double total = std::accumulate(rule.sphere_weights().begin(), rule.sphere_weights().end(), 0.0);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("zonal table rows are the unit-norm harmonics") {
  const QuadratureRule rule(20, 2);
  const talbot::ZonalTable table(rule, 12);
  for (std::size_t i = 0; i < rule.size(); ++i)
    for (int n = 0; n <= 12; ++n)
      CHECK(table(i, n) == doctest::Approx(std::sqrt(2.0 * n + 1) * oracle::legendre(n, rule.nodes()[i])).epsilon(1e-12));
}

TEST_CASE("line and power-law fits") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto f = talbot::fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.stderr_slope == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> n{2, 4, 8, 16, 32}, v{0.5, 0.25, 0.0, 1.0 / 16, 1.0 / 32};
  const auto p = talbot::fit_power_law(n, v);
  CHECK(p.exponent == doctest::Approx(-1.0));
  REQUIRE(p.dropped.size() == 1);
  CHECK(p.dropped[0] == 8.0);
  CHECK(p.used == 4);

  CHECK(talbot::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(talbot::median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("parallel chunks cover the range once and forward exceptions") {
  for (std::size_t workers : {1u, 3u}) {
    talbot::set_worker_count(workers);
    std::vector<std::atomic<int>> hits(101);
    talbot::parallel_chunks(hits.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) hits[i]++;
    });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(talbot::parallel_chunks(10, [](std::size_t, std::size_t) { throw std::runtime_error("x"); }),
                    std::runtime_error);
  }
  talbot::set_worker_count(std::thread::hardware_concurrency());
}
