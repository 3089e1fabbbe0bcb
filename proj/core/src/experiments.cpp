#include "talbot/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "talbot/errors.hpp"
#include "talbot/expsum.hpp"
#include "talbot/fit.hpp"
#include "talbot/lpbesov.hpp"
#include "talbot/quadrature.hpp"
#include "talbot/specialfun.hpp"
#include "talbot/strichartz.hpp"

namespace talbot::experiments {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish(PanelReport& r) {
  std::vector<double> values;
  for (const auto& row : r.rows) values.push_back(row.value);
  r.median = median(values);
}

PanelRow dim_row(const evolve::TimePoint& t, const fractal::DimT& d) {
  return {t.label(), t.value(), d.real.slope, d.imag.slope, d.max};
}

std::vector<double> dyadic(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

double block_l2(const spectra::ZonalSpectrum& f, int N) {
  double acc = 0.0;
  for (int n = N; n < 2 * N && n <= f.n_max(); ++n) acc += std::norm(f.coeffs[static_cast<std::size_t>(n)]);
  return std::sqrt(acc);
}

}  // namespace

spectra::TorusSpectrum step_data(int radius) {
  return spectra::torus_step({{0.0, 1.0}, {std::numbers::pi, 0.0}}, radius);
}

std::vector<spectra::Point2> default_triangle() {
  return {{0.0, 0.0}, {std::numbers::pi, 0.0}, {std::numbers::pi, std::numbers::pi}};
}

// ---------------------------------------------------------------------------

QuantizationReport run_quantization(int radius, int q_max, int q_min) {
  if (q_min < 1 || q_max < q_min) throw InputError("need 1 <= q_min <= q_max");
  const auto start = Clock::now();
  const auto f = step_data(radius);
  QuantizationReport out;
  out.radius = radius;
  for (std::int64_t q = q_min; q <= q_max; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto r = evolve::quantization_check(f, p, q);
      out.rows.push_back({p, q, r.residual});
      out.worst = std::max(out.worst, r.residual);
    }
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

PanelReport run_torus_step_dimension(int radius, std::size_t grid, fractal::FitWindow window,
                                     const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  const auto f = step_data(radius);
  PanelReport out;
  for (const auto& t : panel)
    out.rows.push_back(dim_row(t, fractal::dim_t_torus(f, t, grid, window)));
  finish(out);
  out.seconds = since(start);
  return out;
}

PanelReport run_polygon_dimension(int radius, std::size_t grid, fractal::FitWindow window,
                                  const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  const auto f = spectra::torus_polygon_indicator(default_triangle(), radius);
  PanelReport out;
  for (const auto& t : panel)
    out.rows.push_back(dim_row(t, fractal::dim_t_torus(f, t, grid, window)));
  finish(out);
  out.seconds = since(start);
  return out;
}

PanelReport run_zonal_dimension(double p, int n_max, std::size_t points, fractal::FitWindow window,
                                const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  const auto f = spectra::zonal_decay_family(p, n_max);
  PanelReport out;
  for (const auto& t : panel)
    out.rows.push_back(dim_row(t, fractal::dim_t_zonal(f, t, points, window)));
  finish(out);
  out.seconds = since(start);
  return out;
}

PanelReport run_beam_dimension(double p, int n_max, std::size_t points, fractal::FitWindow window,
                               const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  spectra::BeamSpectrum f(1, n_max);
  f.coeffs[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) f.coeffs[static_cast<std::size_t>(n)] = std::pow(n, -p);
  PanelReport out;
  for (const auto& t : panel)
    out.rows.push_back(dim_row(t, fractal::dim_t_beam_equator(f, t, points, window)));
  finish(out);
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

HolderReport run_zonal_holder(double p, int j_max, double gamma, int j_lo,
                              const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  const int n_max = (1 << (j_max + 1)) - 1;
  const auto f = spectra::zonal_decay_family(p, n_max);
  std::vector<spectra::ZonalSpectrum> states;
  for (const auto& t : panel) states.push_back(evolve::propagate_sphere(f, t));

  HolderReport out;
  out.j_lo = j_lo;
  out.j_hi = j_max;
  out.blocks = lpbesov::zonal_level_sup_norms(states, j_max);
  for (std::size_t i = 0; i < panel.size(); ++i) {
    const auto& b = out.blocks[i];
    PanelRow g{panel[i].label(), panel[i].value(), 0.0, 0.0, 0.0};
    g.value = lpbesov::besov_growth_slope(b, gamma, j_lo, j_max);
    out.growth.rows.push_back(g);
    PanelRow h = g;
    h.value = lpbesov::holder_exponent_fit(b, j_lo, j_max).gamma;
    out.holder.rows.push_back(h);
  }
  finish(out.growth);
  finish(out.holder);
  out.growth.seconds = out.holder.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

WeylReport run_weyl(double p, int log2_lo, int log2_hi,
                    const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  WeylReport out;
  const auto ns = dyadic(log2_lo, log2_hi);
  for (double n : ns) out.Ns.push_back(static_cast<int>(n));
  for (const auto& t : panel) {
    std::vector<double> sups;
    for (int N : out.Ns) {
      const auto w = expsum::power_weights(N, p);
      sups.push_back(expsum::weyl_block_sup(t, N, w).sup);
    }
    const auto fit = expsum::decay_slope_fit(ns, sups);
    out.exponents.rows.push_back({t.label(), t.value(), 0.0, 0.0, fit.exponent});
    out.sups.push_back(std::move(sups));
  }
  finish(out.exponents);
  out.exponents.seconds = since(start);
  return out;
}

WeylReport run_torus_weyl(int d, int log2_lo, int log2_hi,
                          const std::vector<evolve::TimePoint>& panel) {
  const auto start = Clock::now();
  WeylReport out;
  const auto ns = dyadic(log2_lo, log2_hi);
  for (double n : ns) out.Ns.push_back(static_cast<int>(n));
  for (const auto& t : panel) {
    std::vector<double> sups;
    for (int N : out.Ns) sups.push_back(expsum::torus_weyl_sup(t, N, d));
    const auto fit = expsum::decay_slope_fit(ns, sups);
    out.exponents.rows.push_back({t.label(), t.value(), 0.0, 0.0, fit.exponent});
    out.sups.push_back(std::move(sups));
  }
  finish(out.exponents);
  out.exponents.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

KappaReport run_kappa_suite(int entries, int lambda_n, const gaunt::LambdaConstants& constants) {
  if (entries < 0) throw InputError("entries must be non-negative");
  const auto start = Clock::now();
  KappaReport out;
  out.entries = entries;
  out.lambda_n = lambda_n;
  out.constants = constants;
  out.min_value = std::numeric_limits<double>::infinity();

  for (int d : {2, 3}) {
    // Sums of two entries reach 2 * entries in the Parseval composition.
    gaunt::KappaTable table(d, 2 * entries);
    auto visit = [&](std::span<const int> idx) {
      std::array<int, 4> perm{};
      std::copy(idx.begin(), idx.end(), perm.begin());
      const double v = table.value(idx);
      out.min_value = std::min(out.min_value, v);
      const int sum = std::accumulate(idx.begin(), idx.end(), 0);
      if (!gaunt::admissible(idx) || sum % 2 != 0) out.support_max = std::max(out.support_max, std::abs(v));
      const auto k = static_cast<std::ptrdiff_t>(idx.size());
      std::sort(perm.begin(), perm.begin() + k);
      do {
        const std::span<const int> p(perm.data(), idx.size());
        out.permutation_max = std::max(out.permutation_max, std::abs(table.value(p) - v));
      } while (std::next_permutation(perm.begin(), perm.begin() + k));
      // Reversed order through the stand-alone path.
      std::reverse(perm.begin(), perm.begin() + k);
      out.direct_max = std::max(out.direct_max,
                                std::abs(gaunt::kappa(std::span<const int>(perm.data(), idx.size()), d) - v));
    };
    for (int a = 0; a <= entries; ++a)
      for (int b = a; b <= entries; ++b)
        for (int c = b; c <= entries; ++c) {
          const int t3[3] = {a, b, c};
          visit(t3);
          for (int e = c; e <= entries; ++e) {
            const int t4[4] = {a, b, c, e};
            visit(t4);
            // All three pairings of the quadruple.
            const int pairings[3][4] = {{a, b, c, e}, {a, c, b, e}, {a, e, b, c}};
            for (const auto& q : pairings) {
              double acc = 0.0;
              for (int n = 0; n <= std::min(q[0] + q[1], q[2] + q[3]); ++n)
                acc += table(n, q[0], q[1]) * table(n, q[2], q[3]);
              out.parseval_max = std::max(out.parseval_max, std::abs(acc - table.value(t4)));
            }
          }
        }
  }
  if (lambda_n > 0) out.scan = gaunt::lambda_scan(lambda_n, constants);
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

ResonanceReport run_resonance(int n2, int n3, int d, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw InputError("need 1 <= n_lo <= n_hi");
  ResonanceReport out;
  std::vector<double> ns;
  // Half-octave steps.
  for (double x = n_lo; x <= n_hi * (1.0 + 1e-12); x *= std::numbers::sqrt2) {
    const int n = static_cast<int>(std::lround(x));
    if (!out.n.empty() && out.n.back() == n) continue;
    const auto c = gaunt::resonance_compare(n, n2, n3, d);
    out.n.push_back(n);
    out.difference.push_back(std::abs(c.difference));
    ns.push_back(n);
    out.bound_constant = std::max(out.bound_constant,
                                  std::abs(c.difference) * n / std::pow(double(n2) * n3, 0.5 * (d - 1)));
  }
  out.exponent = fit_power_law(ns, out.difference).exponent;
  return out;
}

// ---------------------------------------------------------------------------

StrichartzReport run_strichartz(double p, int N, int M_lo, int M_hi, int beam_lo, int beam_hi) {
  const auto start = Clock::now();
  StrichartzReport out;
  out.N = N;
  const int n_max = 2 * std::max(N, M_hi) - 1;
  const auto f = spectra::zonal_decay_family(p, n_max);
  std::vector<double> ms;
  for (int M = M_lo; M <= M_hi; M *= 2) {
    const double b = strichartz::bilinear_l2(f, f, N, M);
    out.M.push_back(M);
    ms.push_back(M);
    out.bilinear.push_back(b);
    out.ratio.push_back(b / (block_l2(f, N) * block_l2(f, M)));
  }
  out.zonal_exponent = fit_power_law(ms, out.ratio).exponent;
  std::vector<double> bn;
  for (int n = beam_lo; n <= beam_hi; n *= 2) {
    out.beam_n.push_back(n);
    bn.push_back(n);
    out.beam_l4.push_back(strichartz::l4_norm_beam(n));
  }
  out.beam_exponent = fit_power_law(bn, out.beam_l4).exponent;
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

NLSReport run_nls_smoothing(int n_max, double p, double dt, double final_time, double s,
                            double eps, double single_mode_dt) {
  const auto start = Clock::now();
  NLSReport out;
  const auto u0 = spectra::zonal_decay_family(p, n_max);
  znls::NLSConfig cfg;
  cfg.n_max = n_max;
  cfg.dt = dt;
  cfg.final_time = final_time;
  const znls::NLSSolver solver(2, n_max, cfg.padding);
  const auto traj = solver.solve(u0, cfg);
  const auto& last = traj.back();
  out.mass_drift = std::abs(last.mass() - u0.l2_norm_squared());
  out.tails = znls::smoothing_residual(last, u0, s, eps);
  out.exponent_gap = out.tails.solution_exponent - out.tails.residual_exponent;

  // a_0 = 1 alone: u(t) = e^{i sigma t}.
  const int small = 8;
  spectra::ZonalSpectrum single(2, small);
  single.coeffs[0] = 1.0;
  znls::NLSConfig one = cfg;
  one.n_max = small;
  one.dt = single_mode_dt;
  const znls::NLSSolver tiny(2, small, one.padding);
  const auto end = tiny.solve(single, one).back();
  const spectra::cplx exact = std::polar(1.0, one.sigma * end.t);
  out.single_mode_error = std::abs(end.a.coeffs[0] - exact);
  for (int n = 1; n <= small; ++n)
    out.single_mode_error = std::max(out.single_mode_error, std::abs(end.a.coeffs[static_cast<std::size_t>(n)]));
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------------------

SpecfunReport run_specfun_check(int n_ortho, const std::vector<int>& ns, double window) {
  SpecfunReport out;
  out.n_ortho = n_ortho;
  const auto count = static_cast<std::size_t>(n_ortho) + 1;
  for (int d : {2, 3}) {
    const QuadratureRule rule(n_ortho + 4, d);
    std::vector<double> norms(count), ys(count);
    specialfun::zonal_norms(d, norms);
    std::vector<double> gram(count * count, 0.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      specialfun::zonal_harmonics_all(d, rule.nodes()[i], norms, ys);
      const double w = rule.sphere_weights()[i];
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) gram[a * count + b] += w * ys[a] * ys[b];
    }
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        out.orthonormality_max = std::max(out.orthonormality_max, std::abs(gram[a * count + b] - (a == b ? 1.0 : 0.0)));
  }

  specialfun::AsymptoticConfig cfg;
  cfg.window = window;
  cfg.remainder = 1.0;
  constexpr int samples = 4096;
  for (int n : ns) {
    double worst = 0.0, bare = 0.0;
    const double lo = window / n, hi = 0.5 * std::numbers::pi;
    for (int k = 0; k <= samples; ++k) {
      const double theta = lo + (hi - lo) * k / samples;
      const auto a = specialfun::jacobi_asymptotic(n, 2, theta, cfg);
      const double exact = specialfun::jacobi_symmetric(n, 2, std::cos(theta));
      const double err = std::abs(exact - a.value);
      worst = std::max(worst, err / a.remainder_bound);
      bare = std::max(bare, err * std::pow(n, 1.5) * std::sin(theta));
    }
    out.n.push_back(n);
    out.constants.push_back(worst);
    out.literal.push_back(bare);
  }
  if (!out.constants.empty()) {
    const auto [mn, mx] = std::minmax_element(out.constants.begin(), out.constants.end());
    out.fitted_constant = *mx;
    out.spread = *mx / *mn;
  }
  return out;
}

}  // namespace talbot::experiments
