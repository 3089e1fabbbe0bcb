#include "talbot/lpbesov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "talbot/errors.hpp"
#include "talbot/evolve.hpp"
#include "talbot/fit.hpp"
#include "talbot/parallel.hpp"
#include "talbot/specialfun.hpp"

namespace talbot::lpbesov {

namespace {

using spectra::cplx;
using spectra::TorusSpectrum;
using spectra::ZonalSpectrum;

double transition(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double h0 = std::exp(-1.0 / x);
  const double h1 = std::exp(-1.0 / (1.0 - x));
  return h0 / (h0 + h1);
}

void check_p(double p) {
  if (!(p == 1.0 || p == 2.0 || p == kInf)) throw InputError("p must be 1, 2 or infinity");
}

// [lo, hi) degree range of sphere level j.
std::pair<int, int> sphere_level(int j) {
  if (j < 0) throw InputError("negative dyadic level");
  if (j == 0) return {0, 2};
  return {1 << j, 1 << (j + 1)};
}

std::size_t grid_points(int top, const NormOptions& opts, std::size_t floor_points) {
  const auto need = std::max<std::size_t>(
      floor_points, static_cast<std::size_t>(opts.oversample) * static_cast<std::size_t>(std::max(top, 1)));
  if (opts.grid == 0) return need;
  if (opts.grid < need)
    throw ResolutionError("grid of " + std::to_string(opts.grid) + " points under-resolves frequency " +
                          std::to_string(top));
  return opts.grid;
}

int zonal_top(const ZonalSpectrum& f) {
  for (int n = f.n_max(); n >= 0; --n)
    if (f.coeffs[static_cast<std::size_t>(n)] != cplx{}) return n;
  return 0;
}

int torus_top(const TorusSpectrum& f) {
  int top = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.data()[i] != cplx{}) top = std::max(top, f.sup_norm_of(i));
  return top;
}

TorusSpectrum trimmed(const TorusSpectrum& f, int radius) {
  TorusSpectrum out(f.dim(), radius);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.data()[i] == cplx{} || f.sup_norm_of(i) > radius) continue;
    out.ref(f.index_of(i)) = f.data()[i];
  }
  return out;
}

// Sup over an odd-sized theta grid of |sum_{n in slot} a_n Y_n| for every
// spectrum and slot. slot_lo[k]..slot_lo[k+1] are the degree ranges. Uses
// Y_n(pi - theta) = (-1)^n Y_n(theta) to sweep only half the grid.
std::vector<std::vector<double>> sweep_sups(const std::vector<ZonalSpectrum>& fs,
                                            const std::vector<int>& slot_lo, std::size_t grid) {
  const int d = fs.front().dim;
  const std::size_t slots = slot_lo.size() - 1;
  const auto top = static_cast<std::size_t>(slot_lo.back());
  if (grid % 2 == 0) ++grid;
  const std::size_t half = (grid - 1) / 2;
  const double step = std::numbers::pi / static_cast<double>(grid - 1);

  // Split coefficients into contiguous real/imaginary arrays.
  const std::size_t count = fs.size();
  std::vector<double> re(count * top, 0.0), im(count * top, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    if (fs[s].dim != d) throw IndexError("spectra of different sphere dimensions");
    const std::size_t lim = std::min(top, fs[s].coeffs.size());
    for (std::size_t n = 0; n < lim; ++n) {
      re[s * top + n] = fs[s].coeffs[n].real();
      im[s * top + n] = fs[s].coeffs[n].imag();
    }
  }
  std::vector<double> norms(top);
  specialfun::zonal_norms(d, norms);

  const std::size_t workers = std::max<std::size_t>(1, worker_count());
  std::vector<std::vector<double>> partial(workers, std::vector<double>(count * slots, 0.0));
  const std::size_t rows = half + 1;
  parallel_chunks(workers, [&](std::size_t wlo, std::size_t whi) {
    std::vector<double> ys(top);
    for (std::size_t w = wlo; w < whi; ++w) {
      auto& best = partial[w];
      const std::size_t lo = rows * w / workers, hi = rows * (w + 1) / workers;
      for (std::size_t j = lo; j < hi; ++j) {
        const double x = std::cos(step * static_cast<double>(j));
        specialfun::zonal_harmonics_all(d, x, norms, ys);
        for (std::size_t s = 0; s < count; ++s) {
          const double* ar = re.data() + s * top;
          const double* ai = im.data() + s * top;
          for (std::size_t k = 0; k < slots; ++k) {
            double er = 0.0, ei = 0.0, orr = 0.0, oi = 0.0;
            const auto a = static_cast<std::size_t>(slot_lo[k]);
            const auto b = static_cast<std::size_t>(slot_lo[k + 1]);
            std::size_t n = a;
            if (n % 2 == 1 && n < b) {
              orr += ar[n] * ys[n];
              oi += ai[n] * ys[n];
              ++n;
            }
            for (; n + 1 < b; n += 2) {
              er += ar[n] * ys[n];
              ei += ai[n] * ys[n];
              orr += ar[n + 1] * ys[n + 1];
              oi += ai[n + 1] * ys[n + 1];
            }
            if (n < b) {
              er += ar[n] * ys[n];
              ei += ai[n] * ys[n];
            }
            const double v1 = std::hypot(er + orr, ei + oi);
            const double v2 = std::hypot(er - orr, ei - oi);
            double& cell = best[s * slots + k];
            cell = std::max(cell, std::max(v1, v2));
          }
        }
      }
    }
  });

  std::vector<std::vector<double>> out(count, std::vector<double>(slots, 0.0));
  for (const auto& part : partial)
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t k = 0; k < slots; ++k)
        out[s][k] = std::max(out[s][k], part[s * slots + k]);
  return out;
}

double zonal_l1(const ZonalSpectrum& f, std::size_t grid) {
  const auto field = evolve::evaluate_zonal(f, grid);
  const specialfun::SphereConstants sc(f.dim);
  const double h = std::numbers::pi / static_cast<double>(grid - 1);
  double acc = 0.0;
  for (std::size_t j = 1; j + 1 < grid; ++j) {
    const double s = std::sin(h * static_cast<double>(j));
    acc += std::abs(field.values[j]) * std::pow(s, f.dim - 1);
  }
  return sc.zonal_ratio() * acc * h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bump

BumpProfile::BumpProfile(std::size_t resolution) : resolution_(resolution) {
  if (resolution < 2) throw InputError("bump resolution must be at least 2");
  table_.resize(resolution + 1);
  for (std::size_t k = 0; k <= resolution; ++k)
    table_[k] = (*this)(0.5 + 1.5 * static_cast<double>(k) / static_cast<double>(resolution));
}

double BumpProfile::operator()(double t) const {
  if (t <= 0.5 || t >= 2.0) return 0.0;
  if (t <= 1.0) return transition(2.0 * t - 1.0);
  return 1.0 - transition(t - 1.0);
}

double BumpProfile::lower_bound() const {
  double best = 1.0;
  constexpr int samples = 20000;
  for (int k = 0; k <= samples; ++k) {
    const double t = 0.6 + (5.0 / 3.0 - 0.6) * k / samples;
    best = std::min(best, (*this)(t));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Blocks

ZonalSpectrum sharp_block(const ZonalSpectrum& f, int N) {
  if (N < 1 || (N & (N - 1)) != 0) throw InputError("block size must be a power of two");
  ZonalSpectrum out = f;
  for (int n = 0; n <= out.n_max(); ++n)
    if (n < N || n >= 2 * N) out.coeffs[static_cast<std::size_t>(n)] = 0.0;
  return out;
}

TorusSpectrum sharp_block(const TorusSpectrum& f, int N) {
  if (N < 1 || (N & (N - 1)) != 0) throw InputError("block size must be a power of two");
  TorusSpectrum out = f;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int s = out.sup_norm_of(i);
    if (s <= N || s > 2 * N) out.data()[i] = 0.0;
  }
  return out;
}

ZonalSpectrum level_block(const ZonalSpectrum& f, int j) {
  const auto [lo, hi] = sphere_level(j);
  ZonalSpectrum out = f;
  for (int n = 0; n <= out.n_max(); ++n)
    if (n < lo || n >= hi) out.coeffs[static_cast<std::size_t>(n)] = 0.0;
  return out;
}

TorusSpectrum level_block(const TorusSpectrum& f, int j) {
  if (j < 0) throw InputError("negative dyadic level");
  if (j >= 1) return sharp_block(f, 1 << (j - 1));
  TorusSpectrum out = f;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out.sup_norm_of(i) != 0) out.data()[i] = 0.0;
  return out;
}

std::vector<double> smooth_block_weights(const BumpProfile& bump, int j, int n_max) {
  if (j < 0) throw InputError("negative dyadic level");
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (j == 0) {
    w[0] = 1.0;
    return w;
  }
  const double scale = std::ldexp(1.0, 1 - j);
  for (int n = 1; n <= n_max; ++n) w[static_cast<std::size_t>(n)] = bump(scale * n);
  return w;
}

ZonalSpectrum smooth_block(const ZonalSpectrum& f, const BumpProfile& bump, int j) {
  const auto w = smooth_block_weights(bump, j, f.n_max());
  ZonalSpectrum out = f;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= w[n];
  return out;
}

double BlockNormTable::lookup(int j, double p) const {
  for (const auto& e : entries)
    if (e.j == j && e.p == p) return e.value;
  return std::nan("");
}

void BlockNormTable::write_csv(std::ostream& out) const {
  out << "j,p,value\n" << std::setprecision(17);
  for (const auto& e : entries) {
    out << e.j << ',';
    if (std::isinf(e.p))
      out << "inf";
    else
      out << e.p;
    out << ',' << e.value << '\n';
  }
}

// ---------------------------------------------------------------------------
// Norms

double lp_norm(const ZonalSpectrum& f, double p, const NormOptions& opts) {
  check_p(p);
  if (p == 2.0) return std::sqrt(f.l2_norm_squared());
  const int top = zonal_top(f);
  const std::size_t grid = grid_points(top, opts, 65);
  if (p == 1.0) return zonal_l1(f, grid);
  const std::vector<int> slots = {0, top + 1};
  return sweep_sups({f}, slots, grid)[0][0];
}

double lp_norm(const TorusSpectrum& f, double p, const NormOptions& opts) {
  check_p(p);
  if (p == 2.0) return std::sqrt(f.l2_norm_squared());
  const int top = torus_top(f);
  const auto t = trimmed(f, top);
  const std::size_t grid = grid_points(top, opts, std::max<std::size_t>(t.side(), 16));
  const std::vector<std::size_t> sizes(static_cast<std::size_t>(f.dim()), grid);
  const auto field = evolve::evaluate_torus(t, sizes);
  double acc = 0.0;
  for (const auto& v : field.values) acc = p == 1.0 ? acc + std::abs(v) : std::max(acc, std::abs(v));
  return p == 1.0 ? acc / static_cast<double>(field.values.size()) : acc;
}

std::vector<std::vector<double>> zonal_level_sup_norms(const std::vector<ZonalSpectrum>& fs,
                                                       int j_max, const NormOptions& opts) {
  if (fs.empty()) return {};
  int top = 0;
  for (const auto& f : fs) top = std::max(top, zonal_top(f));
  std::vector<int> slots = {0};
  for (int j = 0; j <= j_max; ++j) slots.push_back(std::min(sphere_level(j).second, top + 1));
  top = std::min(top, slots.back() - 1);
  for (auto& s : slots) s = std::min(s, top + 1);
  return sweep_sups(fs, slots, grid_points(top, opts, 65));
}

BlockNormTable block_norms(const ZonalSpectrum& f, double p, int j_max, const NormOptions& opts) {
  check_p(p);
  BlockNormTable table;
  if (p == kInf) {
    const auto sups = zonal_level_sup_norms({f}, j_max, opts)[0];
    for (int j = 0; j <= j_max; ++j) table.entries.push_back({j, p, sups[static_cast<std::size_t>(j)]});
    return table;
  }
  for (int j = 0; j <= j_max; ++j) table.entries.push_back({j, p, lp_norm(level_block(f, j), p, opts)});
  return table;
}

BlockNormTable block_norms(const TorusSpectrum& f, double p, int j_max, const NormOptions& opts) {
  check_p(p);
  BlockNormTable table;
  for (int j = 0; j <= j_max; ++j) table.entries.push_back({j, p, lp_norm(level_block(f, j), p, opts)});
  return table;
}

BesovProbe besov_from_blocks(const std::vector<double>& blocks, double gamma) {
  BesovProbe probe;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const double w = std::pow(2.0, gamma * static_cast<double>(j)) * blocks[j];
    probe.weighted.push_back(w);
    if (w > probe.value) {
      probe.value = w;
      probe.argmax_j = static_cast<int>(j);
    }
  }
  return probe;
}

BesovProbe besov_norm_probe(const ZonalSpectrum& f, double gamma, double p, int j_max,
                            const NormOptions& opts) {
  std::vector<double> blocks;
  for (const auto& e : block_norms(f, p, j_max, opts).entries) blocks.push_back(e.value);
  return besov_from_blocks(blocks, gamma);
}

BesovProbe besov_norm_probe(const TorusSpectrum& f, double gamma, double p, int j_max,
                            const NormOptions& opts) {
  std::vector<double> blocks;
  for (const auto& e : block_norms(f, p, j_max, opts).entries) blocks.push_back(e.value);
  return besov_from_blocks(blocks, gamma);
}

HolderFit holder_exponent_fit(const std::vector<double>& block_sup, int j_lo, int j_hi) {
  if (j_lo < 0 || j_hi >= static_cast<int>(block_sup.size()) || j_lo > j_hi)
    throw InputError("fit window outside the block table");
  HolderFit fit;
  std::vector<double> xs, ys;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double v = block_sup[static_cast<std::size_t>(j)];
    if (!(v > 0.0)) {
      fit.dropped.push_back(j);
      continue;
    }
    xs.push_back(j);
    ys.push_back(-std::log2(v));
  }
  if (xs.size() < 5) throw InputError("Holder fit needs at least five non-zero levels");
  const auto line = fit_line(xs, ys);
  fit.gamma = line.slope;
  fit.stderr_gamma = line.stderr_slope;
  fit.used = static_cast<int>(xs.size());
  return fit;
}

double besov_growth_slope(const std::vector<double>& blocks, double gamma, int j_lo, int j_hi) {
  std::vector<double> xs, ys;
  for (int j = j_lo; j <= j_hi && j < static_cast<int>(blocks.size()); ++j) {
    const double v = blocks[static_cast<std::size_t>(j)];
    if (!(v > 0.0)) continue;
    xs.push_back(j);
    ys.push_back(gamma * j + std::log2(v));
  }
  if (xs.size() < 2) throw InputError("growth slope needs two non-zero levels");
  return fit_line(xs, ys).slope;
}

ZonalSpectrum shift_operator_s2(const ZonalSpectrum& f, double theta) {
  if (f.dim != 2) throw IndexError("the shift operator is implemented on S^2");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("polar angle outside [0, pi]");
  std::vector<double> ones(f.coeffs.size(), 1.0), legendre(f.coeffs.size());
  specialfun::zonal_harmonics_all(2, std::cos(theta), ones, legendre);
  ZonalSpectrum out = f;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= legendre[n];
  return out;
}

}  // namespace talbot::lpbesov
