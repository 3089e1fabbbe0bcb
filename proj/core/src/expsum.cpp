#include "talbot/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"

namespace talbot::expsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> box_sum(const evolve::TimePoint& t, int K, std::size_t grid) {
  spectra::TorusSpectrum f(1, K);
  for (int m = -K; m <= K; ++m) f.ref(m) = t.phase(static_cast<std::int64_t>(m) * m);
  const std::size_t sizes[1] = {grid};
  return evolve::evaluate_torus(f, sizes).values;
}

}  // namespace

WeylBlockResult weyl_block_sup(const evolve::TimePoint& t, int N, std::span<const double> weights,
                               double a, std::size_t grid) {
  if (N < 0) throw InputError("block start must be non-negative");
  if (!(a >= 0.0 && a <= 1.0)) throw InputError("damping must lie in [0, 1]");
  if (weights.size() != static_cast<std::size_t>(N) + 1)
    throw InputError("weights must cover n = N..2N");
  if (grid == 0) grid = 16 * static_cast<std::size_t>(std::max(N, 1));

  std::vector<cplx> w(weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto n = static_cast<std::int64_t>(N) + static_cast<std::int64_t>(i);
    const double damp = n == 0 ? 1.0 : std::pow(a, static_cast<double>(n));
    w[i] = t.phase(n * n) * damp * weights[i];
  }

  const std::size_t workers = std::max<std::size_t>(1, worker_count());
  std::vector<WeylBlockResult> best(workers);
  parallel_chunks(workers, [&](std::size_t wlo, std::size_t whi) {
    for (std::size_t wk = wlo; wk < whi; ++wk) {
      auto& b = best[wk];
      const std::size_t lo = grid * wk / workers, hi = grid * (wk + 1) / workers;
      for (std::size_t j = lo; j < hi; ++j) {
        const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
        const cplx step = std::polar(1.0, x);
        // e^{iNx} reduced exactly before the running product starts.
        const auto r = static_cast<std::int64_t>((static_cast<std::uint64_t>(N) * j) % grid);
        cplx z = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(grid));
        cplx acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          acc += w[i] * z;
          z *= step;
          const double v = std::abs(acc);
          if (v > b.sup) {
            b.sup = v;
            b.argmax_x = x;
            b.argmax_u = N + static_cast<int>(i);
          }
        }
      }
    }
  });
  WeylBlockResult out = best.front();
  for (const auto& b : best)
    if (b.sup > out.sup) out = b;
  out.N = N;
  return out;
}

std::vector<double> power_weights(int N, double p) {
  if (N < 1) throw InputError("power weights need N >= 1");
  std::vector<double> w(static_cast<std::size_t>(N) + 1);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(static_cast<double>(N) + static_cast<double>(i), -p);
  return w;
}

cplx gauss_sum(std::int64_t p, std::int64_t q) {
  if (q < 1) throw InputError("gauss sum needs q >= 1");
  if (std::gcd(p < 0 ? -p : p, q) != 1) throw InputError("gauss sum needs gcd(p, q) = 1");
  const auto tp = evolve::TimePoint::rational(p, q);
  cplx acc = 0.0;
  for (std::int64_t n = 0; n < q; ++n) acc += tp.phase(n * n);
  return acc;
}

std::int64_t shell_count(int N, int d) {
  const std::int64_t outer = 2 * (2 * static_cast<std::int64_t>(N) - 1) + 1;
  const std::int64_t inner = N == 0 ? 0 : 2 * (static_cast<std::int64_t>(N) - 1) + 1;
  std::int64_t po = 1, pi = 1;
  for (int i = 0; i < d; ++i) {
    po *= outer;
    pi *= inner;
  }
  return po - pi;
}

double torus_weyl_sup(const evolve::TimePoint& t, int N, int d, std::size_t grid) {
  if (N < 1) throw InputError("torus Weyl sums need N >= 1");
  if (d != 1 && d != 2) throw InputError("torus Weyl sums are implemented for d = 1, 2");
  if (grid == 0) grid = 16 * static_cast<std::size_t>(N);
  if (grid < static_cast<std::size_t>(4 * N)) throw ResolutionError("Weyl grid aliases the shell");
  const auto outer = box_sum(t, 2 * N - 1, grid);
  const auto inner = box_sum(t, N - 1, grid);
  if (d == 1) {
    double best = 0.0;
    for (std::size_t j = 0; j < grid; ++j) best = std::max(best, std::abs(outer[j] - inner[j]));
    return best;
  }
  std::vector<double> rows(grid, 0.0);
  parallel_chunks(grid, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double best = 0.0;
      for (std::size_t j = 0; j < grid; ++j)
        best = std::max(best, std::abs(outer[i] * outer[j] - inner[i] * inner[j]));
      rows[i] = best;
    }
  });
  return *std::max_element(rows.begin(), rows.end());
}

PowerFit decay_slope_fit(std::span<const double> N, std::span<const double> value) {
  if (N.size() < 5) throw InputError("decay fit needs at least five dyadic points");
  auto fit = fit_power_law(N, value);
  if (fit.used < 2) throw InputError("decay fit has fewer than two positive values");
  return fit;
}

double summation_by_parts_residual(std::span<const double> phases, std::span<const double> weights) {
  if (phases.empty() || weights.size() != phases.size() + 1)
    throw InputError("summation by parts needs one more weight than phase");
  cplx direct = 0.0, partial = 0.0, parts = 0.0;
  for (std::size_t n = 0; n < phases.size(); ++n) {
    const cplx e = std::polar(1.0, phases[n]);
    direct += e * weights[n];
    partial += e;
    parts += (weights[n] - weights[n + 1]) * partial;
  }
  parts += weights.back() * partial;
  return std::abs(direct - parts);
}

}  // namespace talbot::expsum
