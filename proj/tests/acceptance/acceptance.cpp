// Acceptance run: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "talbot/experiments.hpp"
#include "talbot/fractal.hpp"
#include "talbot/gaunt.hpp"
#include "talbot/spectra.hpp"

namespace ex = talbot::experiments;
using cplx = std::complex<double>;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& details) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, details.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Coefficient of the indicator of {0 <= y <= x <= pi}: inner integral by hand,
// outer by Gauss-Legendre.
cplx triangle_oracle(int m1, int m2) {
  const cplx I{0.0, 1.0};
  auto inner = [&](double x) -> cplx {
    if (m2 == 0) return x;
    return (1.0 - std::exp(-I * double(m2) * x)) / (I * double(m2));
  };
  auto part = [&](bool imag) {
    return oracle::integrate(
        [&](double x) {
          const cplx v = std::exp(-I * double(m1) * x) * inner(x);
          return imag ? v.imag() : v.real();
        },
        0.0, pi, 32, 20);
  };
  return cplx(part(false), part(true)) / (4 * pi * pi);
}

void quantization() {
  const auto r = ex::run_quantization(1 << 12, 12);
  report(1, "quantization", r.worst < 1e-8 && r.seconds < 10.0,
         fmt("M=4096 q<=12 cases=%zu worst=%.2e (<1e-8) time=%.2fs (<10s)", r.rows.size(), r.worst, r.seconds));
}

void step_dimension() {
  const auto r = ex::run_torus_step_dimension(1 << 14, 1 << 16, {5, 11});
  report(2, "torus step dimension", std::abs(r.median - 1.5) <= 0.1 && r.seconds < 300.0,
         fmt("median=%.4f (1.5 +- 0.1) time=%.3fs (<300s)", r.median, r.seconds));
}

void polygon_dimension() {
  const auto tri = ex::default_triangle();
  const auto f = talbot::spectra::torus_polygon_indicator(tri, 8);
  double worst = 0.0;
  for (int m1 = -8; m1 <= 8; ++m1)
    for (int m2 = -8; m2 <= 8; ++m2) worst = std::max(worst, std::abs(f(m1, m2) - triangle_oracle(m1, m2)));
  const auto r = ex::run_polygon_dimension(1 << 9, 2048, talbot::fractal::kSurfaceWindow);
  report(3, "polygon dimension", std::abs(r.median - 2.5) <= 0.2 && worst < 1e-6,
         fmt("median=%.4f (2.5 +- 0.2) coefficient error=%.2e (<1e-6)", r.median, worst));
}

void zonal_holder() {
  const auto r = ex::run_zonal_holder(1.5, 12, 0.4, 3);
  report(4, "zonal Holder bound", r.growth.median <= 0.02,
         fmt("growth slope median=%.4f (<=0.02) fitted exponent median=%.4f", r.growth.median, r.holder.median));
}

void weyl() {
  const auto r = ex::run_weyl(1.5, 4, 11);
  report(5, "Weyl decay", std::abs(r.exponents.median + 1.0) <= 0.1,
         fmt("median exponent=%.4f (-1 +- 0.1)", r.exponents.median));
}

void kappa() {
  const auto r = ex::run_kappa_suite(12, 64);
  const auto unclassified = r.scan.counts[static_cast<int>(talbot::gaunt::Lambda::unclassified)];
  const bool pass = r.min_value >= -1e-10 && r.support_max < 1e-10 && r.permutation_max == 0.0 &&
                    r.parseval_max < 1e-8 && unclassified == 0;
  report(6, "kappa suite", pass,
         fmt("min=%.2e support=%.2e permutation=%.1e parseval=%.2e unclassified=%lld of %lld", r.min_value,
             r.support_max, r.permutation_max, r.parseval_max, static_cast<long long>(unclassified),
             static_cast<long long>(r.scan.admissible)));
}

void resonance() {
  const auto r = ex::run_resonance(3, 5, 2, 16, 256);
  report(7, "resonance asymptotics", r.exponent <= -0.9,
         fmt("exponent=%.4f (<=-0.9) constant=%.3f", r.exponent, r.bound_constant));
}

void strichartz() {
  const auto r = ex::run_strichartz(1.5, 128, 4, 64, 8, 512);
  report(8, "bilinear Strichartz contrast", r.zonal_exponent <= 0.15 && std::abs(r.beam_exponent - 0.5) <= 0.1,
         fmt("zonal exponent=%.4f (<=0.15) beam exponent=%.4f (0.5 +- 0.1)", r.zonal_exponent, r.beam_exponent));
}

void nls() {
  const auto r = ex::run_nls_smoothing(256, 1.1, 1e-3, 0.1, 0.5, 0.05, 1e-4);
  report(9, "NLS smoothing", r.mass_drift < 1e-8 && r.exponent_gap >= 0.2 && r.single_mode_error < 1e-10,
         fmt("mass drift=%.2e (<1e-8) gap=%.4f (>=0.2) single mode=%.2e (<1e-10) time=%.1fs", r.mass_drift,
             r.exponent_gap, r.single_mode_error, r.seconds));
}

void specfun() {
  const auto r = ex::run_specfun_check(48, {64, 128, 256, 512});
  report(10, "special functions", r.orthonormality_max < 1e-10 && r.spread <= 1.25,
         fmt("orthonormality=%.2e (<1e-10) fitted C=%.4f spread=%.4f (<=1.25)", r.orthonormality_max,
             r.fitted_constant, r.spread));
}

}  // namespace

int main() {
  quantization();
  step_dimension();
  polygon_dimension();
  zonal_holder();
  weyl();
  kappa();
  resonance();
  strichartz();
  nls();
  specfun();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
