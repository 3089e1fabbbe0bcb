#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "talbot/errors.hpp"
#include "talbot/evolve.hpp"
#include "talbot/gaunt.hpp"
#include "talbot/znls.hpp"

using namespace talbot::znls;
using std::numbers::pi;

namespace {

ZonalSpectrum random_state(int d, int n_max, std::uint64_t seed, double scale = 1.0) {
  ZonalSpectrum a(d, n_max);
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  for (int n = 0; n <= n_max; ++n) a.coeffs[n] = scale * cplx(g(eng), g(eng)) / (1.0 + n);
  return a;
}

ZonalSpectrum single_mode(int n_max, cplx A) {
  ZonalSpectrum a(2, n_max);
  a.coeffs[0] = A;
  return a;
}

double max_diff(const ZonalSpectrum& a, const ZonalSpectrum& b) {
  double w = 0.0;
  for (std::size_t n = 0; n < a.coeffs.size(); ++n) w = std::max(w, std::abs(a.coeffs[n] - b.coeffs[n]));
  return w;
}

}  // namespace

TEST_CASE("Wick phase") {
  const NLSSolver solver(2, 8);
  CHECK(solver.gamma_phase(ZonalSpectrum(2, 8)) == 0.0);
  const cplx A{0.6, -0.3};
  CHECK(solver.gamma_phase(single_mode(8, A)) == doctest::Approx(2 * std::norm(A)).epsilon(1e-14));

  // Modes 1 and 2 only: diagonal terms plus 2 Re(conj(a1) a2) times the line integral.
  ZonalSpectrum a(2, 8);
  a.coeffs[1] = {0.3, 0.4};
  a.coeffs[2] = {-0.2, 0.7};
  auto line = [](int k, int l) {
    return oracle::integrate([&](double t) { return oracle::y2(k, t) * oracle::y2(l, t); }, 0.0, pi) / pi;
  };
  const double expect = 2 * (std::norm(a.coeffs[1]) * line(1, 1) + std::norm(a.coeffs[2]) * line(2, 2) +
                             2 * (std::conj(a.coeffs[1]) * a.coeffs[2]).real() * line(1, 2));
  double imag = 1.0;
  CHECK(solver.gamma_phase(a, &imag) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(imag) < 1e-12);
  CHECK(solver.line_matrix(1, 2) == doctest::Approx(line(1, 2)).epsilon(1e-12));

  const auto r = random_state(2, 8, 1);
  solver.gamma_phase(r, &imag);
  CHECK(std::abs(imag) < 1e-12);
}

TEST_CASE("cubic nonlinearity matches the kappa convolution") {
  const int n_max = 8;
  const NLSSolver solver(2, n_max);
  const cplx A{0.8, 0.1};
  const auto one = solver.nonlinearity_apply(single_mode(n_max, A));
  CHECK(std::abs(one.coeffs[0] - std::norm(A) * A) < 1e-14);
  for (int n = 1; n <= n_max; ++n) CHECK(std::abs(one.coeffs[n]) < 1e-14);
  CHECK(max_diff(solver.nonlinearity_apply(ZonalSpectrum(2, n_max)), ZonalSpectrum(2, n_max)) == 0.0);

  const auto a = random_state(2, n_max, 7);
  const auto out = solver.nonlinearity_apply(a);
  talbot::gaunt::KappaTable kt(2, n_max);
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (int n1 = 0; n1 <= n_max; ++n1)
      for (int n2 = 0; n2 <= n_max; ++n2)
        for (int n3 = 0; n3 <= n_max; ++n3)
          acc += a.coeffs[n1] * std::conj(a.coeffs[n2]) * a.coeffs[n3] * kt(n, n1, n2, n3);
    worst = std::max(worst, std::abs(acc - out.coeffs[n]));
  }
  CHECK(worst < 1e-9);
  CHECK_THROWS_AS(solver.nonlinearity_apply(ZonalSpectrum(2, 9)), talbot::IndexError);
}

TEST_CASE("single mode against the closed form") {
  // a_0 = A solves a' = i sigma |A|^2 a exactly.
  const cplx A{0.9, 0.2};
  auto error = [&](double dt, int sigma) {
    const NLSSolver solver(2, 8);
    NLSConfig cfg;
    cfg.n_max = 8;
    cfg.dt = dt;
    cfg.final_time = 0.1;
    cfg.sigma = sigma;
    const auto end = solver.solve(single_mode(8, A), cfg).back();
    CHECK(end.t == doctest::Approx(0.1));
    return std::abs(end.a.coeffs[0] - A * std::polar(1.0, sigma * std::norm(A) * 0.1));
  };
  CHECK(error(1e-4, 1) < 1e-10);
  CHECK(error(1e-4, -1) < 1e-10);
  const double e1 = error(1e-2, 1), e2 = error(5e-3, 1), e3 = error(2.5e-3, 1);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("mass conservation and the linear limit") {
  const NLSSolver solver(2, 32);
  const auto a = random_state(2, 32, 3);
  NLSState s;
  s.a = a;
  const auto next = solver.step_strang(s, 1e-3);
  CHECK(std::abs(next.mass() - s.mass()) < 1e-10);

  NLSConfig cfg;
  cfg.n_max = 32;
  cfg.dt = 1e-3;
  cfg.final_time = 0.05;
  cfg.checkpoint_every = 10;
  const auto traj = solver.solve(a, cfg);
  CHECK(traj.size() == 6);
  for (const auto& st : traj) CHECK(std::abs(st.mass() - s.mass()) < 1e-8);

  cfg.nonlinear = false;
  const auto lin = solver.solve(a, cfg).back();
  const auto exact = talbot::evolve::propagate_sphere(a, talbot::evolve::TimePoint::arbitrary(lin.t));
  CHECK(max_diff(lin.a, exact) < 1e-12);
  CHECK(lin.phi == 0.0);
  const auto r = smoothing_residual_coeffs(lin, a);
  for (const auto& c : r.coeffs) CHECK(std::abs(c) < 1e-12);

  // A tiny amplitude nearly linear.
  const auto small = random_state(2, 32, 3, 1e-4);
  cfg.nonlinear = true;
  const auto near = solver.solve(small, cfg).back();
  CHECK(max_diff(near.a, talbot::evolve::propagate_sphere(small, talbot::evolve::TimePoint::arbitrary(near.t))) < 1e-10);
}

TEST_CASE("Wick ordering is a global gauge") {
  const NLSSolver solver(2, 24);
  const auto a = random_state(2, 24, 9);
  NLSConfig cfg;
  cfg.n_max = 24;
  cfg.dt = 1e-3;
  cfg.final_time = 0.05;
  for (int sigma : {1, -1}) {
    cfg.sigma = sigma;
    const auto u = solver.solve(a, cfg).back();
    const auto v = solver.solve_wick(a, cfg).back();
    CHECK(u.phi == doctest::Approx(v.phi).epsilon(1e-12));
    ZonalSpectrum gauged = u.a;
    for (auto& c : gauged.coeffs) c *= std::polar(1.0, -sigma * u.phi);
    CHECK(max_diff(gauged, v.a) < 1e-8);
  }
}

TEST_CASE("smoothing residual") {
  const int n_max = 64;
  const NLSSolver solver(2, n_max);
  auto u0 = talbot::spectra::zonal_decay_family(1.1, n_max);
  NLSState s0;
  s0.a = u0;
  const auto t0 = smoothing_residual(s0, u0, 0.5, 0.05);
  for (const auto& row : t0.rows) CHECK(row.residual == 0.0);
  CHECK(std::isnan(t0.residual_exponent));
  CHECK(t0.rows.front().N == 1);
  CHECK(t0.rows[2].N == 4);
  CHECK(t0.rows[2].solution_weighted == doctest::Approx(t0.rows[2].solution * std::pow(4.0, 0.55)));

  NLSConfig cfg;
  cfg.n_max = n_max;
  cfg.dt = 2e-3;
  cfg.final_time = 0.1;
  const auto end = solver.solve(u0, cfg).back();
  const auto table = smoothing_residual(end, u0, 0.5, 0.05);
  CHECK(table.residual_exponent < table.solution_exponent);
  std::ostringstream os;
  table.write_csv(os);
  CHECK(os.str().find("N,") == 0);
  std::ostringstream cp;
  write_checkpoint(cp, end);
  CHECK(cp.str().find("\"phi\"") != std::string::npos);
}
