#include "talbot/strichartz.hpp"

#include <cmath>
#include <numbers>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"
#include "talbot/quadrature.hpp"
#include "talbot/specialfun.hpp"

namespace talbot::strichartz {

namespace {

using spectra::cplx;

std::int64_t lambda(std::int64_t k, int d) { return k * (k + d - 1); }

cplx coeff(const ZonalSpectrum& f, int n) {
  return n <= f.n_max() ? f.coeffs[static_cast<std::size_t>(n)] : cplx{};
}

}  // namespace

std::size_t PairFrequencyDecomposition::pair_count() const {
  std::size_t total = 0;
  for (const auto& [tau, pairs] : classes) total += pairs.size();
  return total;
}

PairFrequencyDecomposition pair_decomposition(int N, int M, int d) {
  if (N < 1 || M < 1) throw InputError("dyadic ranges need N, M >= 1");
  PairFrequencyDecomposition out;
  for (int n = N; n < 2 * N; ++n)
    for (int m = M; m < 2 * M; ++m) out.classes[lambda(n, d) + lambda(m, d)].emplace_back(n, m);
  return out;
}

std::int64_t alpha_count(int N, int M, std::int64_t tau) {
  std::int64_t count = 0;
  for (std::int64_t n = N; n < 2 * static_cast<std::int64_t>(N); ++n) {
    const std::int64_t rest = tau - n * (n + 1);
    if (rest < 0) break;
    // m(m+1) = rest  <=>  m = (sqrt(1 + 4 rest) - 1) / 2
    auto m = static_cast<std::int64_t>((std::sqrt(1.0 + 4.0 * static_cast<double>(rest)) - 1.0) / 2.0);
    while (m * (m + 1) > rest) --m;
    while ((m + 1) * (m + 2) <= rest) ++m;
    if (m * (m + 1) == rest && m >= M && m < 2 * static_cast<std::int64_t>(M)) ++count;
  }
  return count;
}

std::int64_t alpha_max(int N, int M) {
  std::int64_t best = 0;
  for (const auto& [tau, pairs] : pair_decomposition(N, M, 2).classes)
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(pairs.size()));
  return best;
}

double bilinear_l2(const ZonalSpectrum& f, const ZonalSpectrum& g, int N, int M) {
  if (f.dim != g.dim) throw IndexError("spectra of different sphere dimensions");
  const int d = f.dim;
  const auto decomposition = pair_decomposition(N, M, d);
  // |sum f_n g_m Y_n Y_m|^2 has degree <= 2(2N + 2M - 2).
  const QuadratureRule rule(2 * N + 2 * M + 2, d);
  const int top = 2 * std::max(N, M);
  std::vector<double> norms(static_cast<std::size_t>(top));
  specialfun::zonal_norms(d, norms);
  std::vector<std::vector<double>> ys(rule.size(), std::vector<double>(norms.size()));
  for (std::size_t i = 0; i < rule.size(); ++i)
    specialfun::zonal_harmonics_all(d, rule.nodes()[i], norms, ys[i]);

  std::vector<const std::vector<std::pair<int, int>>*> classes;
  for (const auto& [tau, pairs] : decomposition.classes) classes.push_back(&pairs);

  const std::size_t workers = std::max<std::size_t>(1, worker_count());
  std::vector<double> partial(workers, 0.0);
  parallel_chunks(workers, [&](std::size_t wlo, std::size_t whi) {
    for (std::size_t w = wlo; w < whi; ++w) {
      const std::size_t lo = classes.size() * w / workers, hi = classes.size() * (w + 1) / workers;
      double acc = 0.0;
      for (std::size_t c = lo; c < hi; ++c) {
        const auto& pairs = *classes[c];
        bool any = false;
        for (const auto& [n, m] : pairs) any = any || (coeff(f, n) != cplx{} && coeff(g, m) != cplx{});
        if (!any) continue;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          cplx h = 0.0;
          for (const auto& [n, m] : pairs)
            h += coeff(f, n) * coeff(g, m) * ys[i][static_cast<std::size_t>(n)] * ys[i][static_cast<std::size_t>(m)];
          acc += rule.sphere_weights()[i] * std::norm(h);
        }
      }
      partial[w] = acc;
    }
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return std::sqrt(total);
}

double l4_norm_spacetime(const ZonalSpectrum& f, int N) {
  // ||u||_4^4 = ||u^2||_2^2 and u^2 is the bilinear product of u with itself.
  return std::sqrt(bilinear_l2(f, f, N, N));
}

double l4_norm_spacetime_grid(const ZonalSpectrum& f, int N, std::size_t t_points) {
  if (N < 1) throw InputError("block size must be at least 1");
  const int d = f.dim;
  const int hi = std::min(2 * N - 1, f.n_max());
  if (hi < N) return 0.0;
  // |u|^4 is a trigonometric polynomial in t of degree <= 2 (lambda_hi - lambda_N).
  if (t_points == 0) t_points = static_cast<std::size_t>(4 * (lambda(hi, d) - lambda(N, d)) + 8);
  const QuadratureRule rule(2 * hi + 2, d);
  std::vector<double> norms(static_cast<std::size_t>(hi) + 1);
  specialfun::zonal_norms(d, norms);
  std::vector<std::vector<double>> ys(rule.size(), std::vector<double>(norms.size()));
  for (std::size_t i = 0; i < rule.size(); ++i)
    specialfun::zonal_harmonics_all(d, rule.nodes()[i], norms, ys[i]);

  double acc = 0.0;
  for (std::size_t k = 0; k < t_points; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(t_points);
    std::vector<cplx> a(norms.size(), 0.0);
    for (int n = N; n <= hi; ++n)
      a[static_cast<std::size_t>(n)] = coeff(f, n) * std::polar(1.0, std::fmod(t * static_cast<double>(lambda(n, d)), 2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < rule.size(); ++i) {
      cplx u = 0.0;
      for (int n = N; n <= hi; ++n) u += a[static_cast<std::size_t>(n)] * ys[i][static_cast<std::size_t>(n)];
      const double m2 = std::norm(u);
      acc += rule.sphere_weights()[i] * m2 * m2;
    }
  }
  return std::pow(acc / static_cast<double>(t_points), 0.25);
}

double l4_norm_beam(int n) {
  if (n < 0) throw DomainError("degree must be non-negative");
  const QuadratureRule rule(2 * n + 2, 2);
  const double log_c4 = 4.0 * specialfun::gaussian_beam_log_constant(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const double s2 = 1.0 - x * x;
    if (s2 <= 0.0) continue;
    acc += rule.weights()[i] * std::exp(log_c4 + 2.0 * n * std::log(s2));
  }
  return 0.5 * acc;
}

double l4_norm_beam_closed_form(int n) {
  if (n < 0) throw DomainError("degree must be non-negative");
  const double log_beta = std::lgamma(0.5) + std::lgamma(2.0 * n + 1.0) - std::lgamma(2.0 * n + 1.5);
  return 0.5 * std::exp(4.0 * specialfun::gaussian_beam_log_constant(n) + log_beta);
}

}  // namespace talbot::strichartz
