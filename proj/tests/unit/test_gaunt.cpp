#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "talbot/errors.hpp"
#include "talbot/gaunt.hpp"

using namespace talbot::gaunt;
using std::numbers::pi;

namespace {

double y(int d, int n, double t) { return d == 2 ? oracle::y2(n, t) : oracle::y3(n, t); }

double kappa_oracle(std::vector<int> idx, int d) {
  return oracle::sphere_mean(d, [&](double t) {
    double v = 1.0;
    for (int n : idx) v *= y(d, n, t);
    return v;
  });
}

double k3(int a, int b, int c, int d) {
  const int idx[3] = {a, b, c};
  return kappa(idx, d);
}

}  // namespace

TEST_CASE("kappa special values") {
  const int zeros[4] = {0, 0, 0, 0};
  CHECK(kappa(zeros, 2) == doctest::Approx(1.0).epsilon(1e-14));
  for (int n = 0; n <= 24; ++n)
    for (int m = 0; m <= 24; ++m) {
      const int idx[2] = {n, m};
      CHECK(std::abs(kappa(idx, 2) - (n == m ? 1.0 : 0.0)) < 1e-12);
    }
  const int tall[4] = {5, 1, 1, 1};
  CHECK(std::abs(kappa(tall, 2)) < 1e-12);
  CHECK(!admissible(tall));
  const int ok[4] = {3, 1, 1, 1};
  CHECK(admissible(ok));
  CHECK_THROWS_AS(kappa(ok, 2, 3), talbot::ResolutionError);
}

TEST_CASE("kappa against an independent quadrature") {
  for (int d : {2, 3}) {
    double worst = 0.0;
    for (std::vector<int> idx : std::vector<std::vector<int>>{{2, 3, 4}, {1, 1, 2}, {5, 6, 7}, {3, 3, 3, 3},
                                                              {2, 4, 5, 7}, {10, 6, 4}, {8, 1, 2, 7}})
      worst = std::max(worst, std::abs(kappa(idx, d) - kappa_oracle(idx, d)));
    CHECK(worst < 1e-10);
  }
  // Legendre linearization: kappa(1, 1, 2) on S^2 is 2/sqrt(5).
  CHECK(k3(1, 1, 2, 2) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("kappa table") {
  KappaTable table(2, 12);
  table.fill(6);
  const std::size_t filled = table.cached();
  CHECK(filled > 0);
  CHECK(table(2, 3, 4) == doctest::Approx(k3(4, 2, 3, 2)).epsilon(1e-13));
  CHECK(table(2, 3, 4) == table(4, 3, 2));
  CHECK(table(1, 2, 3, 4) == table(4, 1, 3, 2));
  CHECK(table.cached() == filled);
  double min_value = 1.0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c) min_value = std::min(min_value, table(a, b, c));
  CHECK(min_value >= -1e-10);
  CHECK_THROWS(table(13, 1, 1));

  std::stringstream io;
  table.save(io);
  const auto back = KappaTable::load(io);
  CHECK(back.dim() == 2);
  CHECK(back.n_max() == 12);
  CHECK(back.cached() == table.cached());
  CHECK(back(2, 3, 4) == table(2, 3, 4));
  CHECK(back(5, 6, 6, 5) == table(5, 6, 6, 5));

  std::stringstream bad("not a table");
  CHECK_THROWS(KappaTable::load(bad));
}

TEST_CASE("Parseval composition") {
  CHECK(parseval_compose_check(0, 0, 0, 0, 2) < 1e-12);
  CHECK(parseval_compose_check(2, 3, 4, 5, 2) < 1e-8);
  CHECK(parseval_compose_check(1, 1, 1, 1, 3) < 1e-8);
  const int idx[4] = {2, 3, 4, 5};
  CHECK(kappa4_parseval(2, 3, 4, 5, 2) == doctest::Approx(kappa(idx, 2)).epsilon(1e-10));
  CHECK(kappa4_parseval(2, 3, 4, 5, 2) == doctest::Approx(kappa_oracle({2, 3, 4, 5}, 2)).epsilon(1e-10));
}

TEST_CASE("resonance symbol and Lambda sets") {
  CHECK(h_symbol(5, 3, 3, 5, 2) == 0);
  CHECK(h_symbol(2, 1, 1, 2, 2) == 0);
  CHECK(h_symbol(3, 1, 1, 1, 2) == -10);
  CHECK(h_symbol(1, 2, 3, 4, 3) == 24 - 3 + 8 - 15);
  CHECK(h_symbol(100000, 0, 0, 0, 2) == -100000LL * 100001LL);

  const auto c = kCalibratedLambda;
  CHECK(lambda_classify(7, 2, 3, 7, c) == Lambda::lambda0);
  CHECK(lambda_classify(2, 3, 7, 7, c) == Lambda::lambda0);
  CHECK_THROWS_AS(lambda_classify(1, 1, 1, 9, c), talbot::InputError);
  CHECK(to_string(Lambda::lambda2) == "Lambda2");

  const auto scan = lambda_scan(64, c);
  CHECK(scan.admissible > 0);
  CHECK(scan.counts[static_cast<int>(Lambda::unclassified)] == 0);
  CHECK(scan.counts[0] + scan.counts[1] + scan.counts[2] == scan.admissible);

  // Small scan against a hand loop.
  std::int64_t admissible_count = 0;
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b)
      for (int e = 0; e <= 10; ++e)
        for (int n = 0; n <= 10; ++n) {
          const int idx[4] = {a, b, e, n};
          admissible_count += admissible(idx);
        }
  CHECK(lambda_scan(10, c).admissible == admissible_count);
}

TEST_CASE("Lambda calibration") {
  const auto c = calibrate_lambda(24);
  CHECK(c.c1 > 0.0);
  CHECK(c.c2 > 0.0);
  CHECK(lambda_scan(24, c).counts[3] == 0);
  // Larger constants leave tuples unclassified.
  CHECK(lambda_scan(24, {c.c1 * 1.05, c.c2 * 1.05}).counts[3] > 0);
}

TEST_CASE("resonance asymptotics") {
  const auto zero = resonance_compare(20, 0, 0, 2);
  CHECK(zero.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zero.line == doctest::Approx(1.0).epsilon(1e-12));

  for (int d : {2, 3})
    for (auto [a, b] : {std::pair{3, 5}, {2, 2}, {0, 4}}) {
      const double line = oracle::integrate([&](double t) { return y(d, a, t) * y(d, b, t); }, 0.0, pi) / pi;
      CHECK(line_integral(a, b, d) == doctest::Approx(line).epsilon(1e-12));
    }

  std::vector<double> ns, diffs;
  double bound = 0.0;
  for (int n = 16; n <= 256; n *= 2) {
    const auto r = resonance_compare(n, 3, 5, 2);
    CHECK(r.difference == doctest::Approx(std::abs(r.kappa - r.line)).epsilon(1e-12));
    const int idx[4] = {n, n, 3, 5};
    CHECK(r.kappa == doctest::Approx(kappa(idx, 2)).epsilon(1e-12));
    ns.push_back(std::log2(n));
    diffs.push_back(std::log2(r.difference));
    bound = std::max(bound, r.difference * n / std::sqrt(15.0));
  }
  CHECK(oracle::slope(ns, diffs) <= -0.9);
  CHECK(bound < 1.0);
}
