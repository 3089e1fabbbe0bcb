#include "talbot/znls.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <ostream>

#include "talbot/errors.hpp"
#include "talbot/evolve.hpp"
#include "talbot/fit.hpp"
#include "talbot/specialfun.hpp"

namespace talbot::znls {

namespace {

double max_gap(const ZonalSpectrum& a, const ZonalSpectrum& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.coeffs.size(); ++n) worst = std::max(worst, std::abs(a.coeffs[n] - b.coeffs[n]));
  return worst;
}

}  // namespace

NLSSolver::NLSSolver(int d, int n_max, int padding)
    : d_(d), n_max_(n_max), rule_(std::max(padding, 2) * n_max + 2, d), table_(rule_, n_max) {
  if (padding < 2) throw InputError("dealiasing padding must be at least 2");
  const auto count = static_cast<std::size_t>(n_max) + 1;
  // Midpoint rule with more than (2 n_max)/2 points is exact for these products.
  const int points = 2 * n_max + 16;
  std::vector<double> norms(count), ys(count);
  specialfun::zonal_norms(d, norms);
  line_.assign(count * count, 0.0);
  for (int j = 0; j < points; ++j) {
    specialfun::zonal_harmonics_all(d, std::cos(std::numbers::pi * (j + 0.5) / points), norms, ys);
    for (std::size_t k = 0; k < count; ++k)
      for (std::size_t l = 0; l < count; ++l) line_[k * count + l] += ys[k] * ys[l];
  }
  for (auto& v : line_) v /= points;
}

double NLSSolver::line_matrix(int k, int l) const {
  const auto count = static_cast<std::size_t>(n_max_) + 1;
  return line_.at(static_cast<std::size_t>(k) * count + static_cast<std::size_t>(l));
}

ZonalSpectrum NLSSolver::nonlinearity_apply(const ZonalSpectrum& a) const {
  if (a.n_max() != n_max_ || a.dim != d_) throw IndexError("state does not match the solver");
  const auto count = static_cast<std::size_t>(n_max_) + 1;
  ZonalSpectrum out(d_, n_max_);
  for (std::size_t i = 0; i < table_.nodes(); ++i) {
    const double* row = table_.row(i);
    cplx u = 0.0;
    for (std::size_t n = 0; n < count; ++n) u += a.coeffs[n] * row[n];
    const cplx cube = std::norm(u) * u * rule_.sphere_weights()[i];
    for (std::size_t n = 0; n < count; ++n) out.coeffs[n] += cube * row[n];
  }
  return out;
}

double NLSSolver::gamma_phase(const ZonalSpectrum& a, double* imag) const {
  const auto count = static_cast<std::size_t>(n_max_) + 1;
  cplx acc = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (a.coeffs[k] == cplx{}) continue;
    cplx row = 0.0;
    for (std::size_t l = 0; l < count; ++l) row += line_[k * count + l] * a.coeffs[l];
    acc += std::conj(a.coeffs[k]) * row;
  }
  acc *= 2.0;
  if (imag) *imag = acc.imag();
  return acc.real();
}

ZonalSpectrum NLSSolver::linear(const ZonalSpectrum& a, double dt) const {
  return evolve::propagate_sphere(a, evolve::TimePoint::arbitrary(dt));
}

ZonalSpectrum NLSSolver::averaged_nonlinearity(const ZonalSpectrum& a, const ZonalSpectrum& b) const {
  const auto count = static_cast<std::size_t>(n_max_) + 1;
  ZonalSpectrum out(d_, n_max_);
  for (std::size_t i = 0; i < table_.nodes(); ++i) {
    const double* row = table_.row(i);
    cplx ua = 0.0, ub = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      ua += a.coeffs[n] * row[n];
      ub += b.coeffs[n] * row[n];
    }
    const double v = 0.5 * (std::norm(ua) + std::norm(ub));
    const cplx term = v * 0.5 * (ua + ub) * rule_.sphere_weights()[i];
    for (std::size_t n = 0; n < count; ++n) out.coeffs[n] += term * row[n];
  }
  return out;
}

ZonalSpectrum NLSSolver::cubic_substep(const ZonalSpectrum& a, double dt, int sigma,
                                       const NLSConfig& cfg) const {
  // Crank-Nicolson with averaged density:
  //   b = a + i sigma dt P(((|a|^2 + |b|^2) / 2) (a + b) / 2).
  // The density is real at every node, so sum |b_n|^2 = sum |a_n|^2.
  const cplx factor(0.0, dt * sigma);
  ZonalSpectrum b = a;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    ZonalSpectrum next = averaged_nonlinearity(a, b);
    for (std::size_t n = 0; n < next.coeffs.size(); ++n) next.coeffs[n] = a.coeffs[n] + factor * next.coeffs[n];
    const double gap = max_gap(next, b);
    b = std::move(next);
    if (gap <= cfg.tolerance * std::max(1.0, std::sqrt(a.l2_norm_squared()))) break;
  }
  return b;
}

NLSState NLSSolver::step_strang(const NLSState& s, double dt, const NLSConfig& cfg) const {
  NLSState out = s;
  out.a = linear(s.a, 0.5 * dt);
  if (cfg.nonlinear) {
    const double g0 = gamma_phase(out.a);
    out.a = cubic_substep(out.a, dt, s.sigma, cfg);
    const double g1 = gamma_phase(out.a);
    out.phi += 0.5 * dt * (g0 + g1);
  }
  out.a = linear(out.a, 0.5 * dt);
  out.t += dt;
  return out;
}

NLSState NLSSolver::step_wick(const NLSState& s, double dt, const NLSConfig& cfg) const {
  NLSState out = s;
  out.a = linear(s.a, 0.5 * dt);
  if (cfg.nonlinear) {
    const double g0 = gamma_phase(out.a);
    out.a = cubic_substep(out.a, dt, s.sigma, cfg);
    const double g1 = gamma_phase(out.a);
    const double rot = 0.5 * dt * (g0 + g1);
    const cplx phase = std::polar(1.0, -s.sigma * rot);
    for (auto& c : out.a.coeffs) c *= phase;
    out.phi += rot;
  }
  out.a = linear(out.a, 0.5 * dt);
  out.t += dt;
  return out;
}

namespace {

template <typename Step>
std::vector<NLSState> run(const ZonalSpectrum& u0, const NLSConfig& cfg, Step&& step) {
  if (!(cfg.dt > 0.0)) throw InputError("time step must be positive");
  if (cfg.final_time < 0.0) throw InputError("final time must be non-negative");
  NLSState s;
  s.a = u0;
  s.sigma = cfg.sigma;
  std::vector<NLSState> traj{s};
  const auto steps = static_cast<long>(std::llround(cfg.final_time / cfg.dt));
  for (long k = 1; k <= steps; ++k) {
    s = step(s);
    if (cfg.checkpoint_every > 0 && k % cfg.checkpoint_every == 0 && k != steps) traj.push_back(s);
  }
  if (steps > 0) traj.push_back(s);
  return traj;
}

}  // namespace

std::vector<NLSState> NLSSolver::solve(const ZonalSpectrum& u0, const NLSConfig& cfg) const {
  if (cfg.sigma != 1 && cfg.sigma != -1) throw InputError("sigma must be +1 or -1");
  return run(u0, cfg, [&](const NLSState& s) { return step_strang(s, cfg.dt, cfg); });
}

std::vector<NLSState> NLSSolver::solve_wick(const ZonalSpectrum& u0, const NLSConfig& cfg) const {
  if (cfg.sigma != 1 && cfg.sigma != -1) throw InputError("sigma must be +1 or -1");
  return run(u0, cfg, [&](const NLSState& s) { return step_wick(s, cfg.dt, cfg); });
}

// ---------------------------------------------------------------------------
// Residuals

ZonalSpectrum smoothing_residual_coeffs(const NLSState& state, const ZonalSpectrum& u0) {
  if (u0.n_max() != state.a.n_max()) throw IndexError("initial data does not match the state");
  ZonalSpectrum r = evolve::propagate_sphere(u0, evolve::TimePoint::arbitrary(state.t));
  const cplx rot = std::polar(1.0, state.sigma * state.phi);
  for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = state.a.coeffs[n] - rot * r.coeffs[n];
  return r;
}

TailTable smoothing_residual(const NLSState& state, const ZonalSpectrum& u0, double s, double eps,
                             int fit_from) {
  const ZonalSpectrum r = smoothing_residual_coeffs(state, u0);
  TailTable table;
  std::vector<double> ns, rs, us;
  for (int N = 1; N <= r.n_max(); N *= 2) {
    TailRow row;
    row.N = N;
    double rr = 0.0, uu = 0.0;
    for (int n = N; n < 2 * N && n <= r.n_max(); ++n) {
      rr += std::norm(r.coeffs[static_cast<std::size_t>(n)]);
      uu += std::norm(state.a.coeffs[static_cast<std::size_t>(n)]);
    }
    row.residual = std::sqrt(rr);
    row.solution = std::sqrt(uu);
    const double w = std::pow(N, s + eps);
    row.residual_weighted = row.residual * w;
    row.solution_weighted = row.solution * w;
    table.rows.push_back(row);
    // Only complete blocks enter the fit.
    if (N >= fit_from && 2 * N - 1 <= r.n_max()) {
      ns.push_back(N);
      rs.push_back(row.residual);
      us.push_back(row.solution);
    }
  }
  // Exponents stay NaN when fewer than two blocks are non-zero (r = 0 at t = 0).
  auto exponent = [&](const std::vector<double>& v) {
    const auto nonzero = std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; });
    return nonzero >= 2 ? fit_power_law(ns, v).exponent : std::numeric_limits<double>::quiet_NaN();
  };
  table.residual_exponent = exponent(rs);
  table.solution_exponent = exponent(us);
  return table;
}

void TailTable::write_csv(std::ostream& out) const {
  out << "N,residual,solution,residual_weighted,solution_weighted\n" << std::setprecision(17);
  for (const auto& r : rows)
    out << r.N << ',' << r.residual << ',' << r.solution << ',' << r.residual_weighted << ','
        << r.solution_weighted << '\n';
}

void write_checkpoint(std::ostream& out, const NLSState& state) {
  nlohmann::json doc;
  doc["t"] = state.t;
  doc["phi"] = state.phi;
  std::vector<double> re, im;
  for (const auto& c : state.a.coeffs) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  doc["re"] = re;
  doc["im"] = im;
  out << doc.dump() << '\n';
}

}  // namespace talbot::znls
