#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "talbot/experiments.hpp"

using namespace talbot::experiments;
using talbot::evolve::TimePoint;

namespace {

std::vector<TimePoint> short_panel() { return {TimePoint::sampled(0.7), TimePoint::sampled(2.1)}; }

}  // namespace

TEST_CASE("data builders") {
  const auto s = step_data(64);
  CHECK(s(0).real() == doctest::Approx(0.5));
  CHECK(std::abs(s(2)) < 1e-15);
  CHECK(default_triangle().size() == 3);
}

TEST_CASE("quantization driver") {
  const auto r = run_quantization(256, 6);
  // phi(1) + ... + phi(6), with p = 0 for q = 1.
  CHECK(r.rows.size() == 12);
  CHECK(r.worst < 1e-8);
  for (const auto& row : r.rows) {
    CHECK(std::gcd(row.p, row.q) == 1);
    CHECK(row.residual <= r.worst);
  }
  CHECK(run_quantization(256, 6, 5).rows.size() == 6);
}

TEST_CASE("panel dimension drivers") {
  const auto r = run_torus_step_dimension(1 << 10, 1 << 12, {3, 9}, short_panel());
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.value == std::max(row.real, row.imag));
    CHECK(row.value > 1.0);
    CHECK(row.value < 2.0);
  }
  CHECK(r.median == doctest::Approx(0.5 * (r.rows[0].value + r.rows[1].value)));

  const auto z = run_zonal_dimension(1.5, 255, 1 << 12, {3, 9}, short_panel());
  CHECK(z.rows.size() == 2);
  CHECK(z.median >= 1.0);
}

TEST_CASE("Holder and Weyl drivers") {
  const auto h = run_zonal_holder(1.5, 8, 0.4, 2, short_panel());
  CHECK(h.growth.rows.size() == 2);
  CHECK(h.blocks.size() == 2);
  CHECK(h.blocks[0].size() == 9);
  CHECK(h.j_hi == 8);

  const auto w = run_weyl(1.5, 4, 8, short_panel());
  CHECK(w.Ns == std::vector<int>{16, 32, 64, 128, 256});
  CHECK(w.sups.size() == 2);
  CHECK(w.exponents.median < 0.0);
  const auto t = run_torus_weyl(1, 3, 7, short_panel());
  CHECK(t.sups[0].size() == 5);
}

TEST_CASE("kappa, resonance, Strichartz, NLS and special function drivers") {
  const auto k = run_kappa_suite(6, 16);
  CHECK(k.permutation_max == 0.0);
  CHECK(k.min_value >= -1e-10);
  CHECK(k.support_max < 1e-10);
  CHECK(k.parseval_max < 1e-8);
  CHECK(k.scan.counts[3] == 0);

  const auto r = run_resonance(3, 5, 2, 16, 64);
  // Half-octave steps.
  CHECK(r.n == std::vector<int>{16, 23, 32, 45, 64});
  CHECK(r.exponent < -0.5);

  const auto s = run_strichartz(1.5, 16, 2, 8, 8, 64);
  CHECK(s.M == std::vector<int>{2, 4, 8});
  CHECK(s.beam_n.size() == 4);
  CHECK(s.beam_exponent == doctest::Approx(0.5).epsilon(0.3));

  const auto n = run_nls_smoothing(32, 1.1, 2e-3, 0.02, 0.5, 0.05, 1e-3);
  CHECK(n.mass_drift < 1e-10);
  CHECK(n.single_mode_error < 1e-6);

  const auto f = run_specfun_check(12, {64, 128});
  CHECK(f.orthonormality_max < 1e-10);
  CHECK(f.constants.size() == 2);
  CHECK(f.spread >= 1.0);
}
