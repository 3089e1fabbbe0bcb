#include "talbot/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <numbers>
#include <ostream>

#include "talbot/errors.hpp"
#include "talbot/fit.hpp"
#include "talbot/parallel.hpp"

namespace talbot::fractal {

namespace {

// Grid index range [lo, hi] (inclusive) of column c out of `cols` over
// `intervals` grid intervals.
std::pair<std::size_t, std::size_t> column(std::size_t c, std::size_t cols, std::size_t intervals) {
  return {c * intervals / cols, (c + 1) * intervals / cols};
}

void check_level(std::size_t intervals, int k) {
  if (k < 0 || k > 30) throw InputError("box level out of range");
  if (intervals < (std::size_t{4} << k))
    throw ResolutionError("grid of " + std::to_string(intervals) +
                          " intervals is too coarse for level " + std::to_string(k));
}

std::uint64_t boxes(double lo, double hi, double eps) {
  return static_cast<std::uint64_t>(std::floor((hi - lo) / eps)) + 1;
}

std::vector<double> component(const evolve::SampledField& f, bool real) {
  std::vector<double> out(f.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = real ? f.values[i].real() : f.values[i].imag();
  return out;
}

// Max/min over the inclusive index box [r0, r1] x [c0, c1], wrapping at n.
std::pair<double, double> cell_range(std::span<const double> s, std::size_t n1, std::size_t n2,
                                     std::size_t r0, std::size_t r1, std::size_t c0,
                                     std::size_t c1) {
  double lo = s[(r0 % n1) * n2 + c0 % n2], hi = lo;
  for (std::size_t r = r0; r <= r1; ++r) {
    const double* row = s.data() + (r % n1) * n2;
    for (std::size_t c = c0; c <= c1; ++c) {
      const double v = row[c % n2];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace

void BoxCountSeries::write_csv(std::ostream& out) const {
  out << "k,epsilon,count\n" << std::setprecision(17);
  for (const auto& l : levels) out << l.k << ',' << l.epsilon << ',' << l.count << '\n';
}

std::string DimensionEstimate::to_json() const {
  nlohmann::json doc;
  doc["slope"] = slope;
  doc["stderr"] = stderr_slope;
  doc["window"] = {k_lo, k_hi};
  doc["component"] = component;
  return doc.dump();
}

std::uint64_t box_count_curve(std::span<const double> samples, int k, bool periodic) {
  if (samples.size() < 2) throw InputError("curve needs at least two samples");
  const std::size_t n = samples.size();
  const std::size_t intervals = periodic ? n : n - 1;
  check_level(intervals, k);
  const std::size_t cols = std::size_t{1} << k;
  const double eps = std::ldexp(1.0, -k);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const auto [a, b] = column(c, cols, intervals);
    double lo = samples[a % n], hi = lo;
    for (std::size_t i = a; i <= b; ++i) {
      const double v = samples[i % n];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    total += boxes(lo, hi, eps);
  }
  return total;
}

std::uint64_t box_count_surface(std::span<const double> samples, std::size_t n1, std::size_t n2,
                                int k, bool periodic) {
  if (samples.size() != n1 * n2) throw InputError("surface sample count does not match the grid");
  const std::size_t i1 = periodic ? n1 : n1 - 1, i2 = periodic ? n2 : n2 - 1;
  check_level(std::min(i1, i2), k);
  const std::size_t cols = std::size_t{1} << k;
  const double eps = std::ldexp(1.0, -k);
  std::vector<std::uint64_t> per_row(cols, 0);
  parallel_chunks(cols, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const auto [r0, r1] = column(r, cols, i1);
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        const auto [c0, c1] = column(c, cols, i2);
        const auto [vlo, vhi] = cell_range(samples, n1, n2, r0, r1, c0, c1);
        acc += boxes(vlo, vhi, eps);
      }
      per_row[r] = acc;
    }
  });
  std::uint64_t total = 0;
  for (auto v : per_row) total += v;
  return total;
}

double box_count_sphere(std::span<const double> samples, std::size_t n_theta, std::size_t n_phi,
                        int k) {
  if (samples.size() != n_theta * n_phi) throw InputError("surface sample count does not match the grid");
  const std::size_t i1 = n_theta - 1, i2 = n_phi;
  check_level(std::min(i1, i2 / 2), k);
  const std::size_t rows = std::size_t{1} << k, cols = rows * 2;  // theta spans pi, phi 2 pi
  const double eps = std::ldexp(1.0, -k);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto [r0, r1] = column(r, rows, i1);
    const double weight = std::sin(std::numbers::pi * (static_cast<double>(r) + 0.5) / static_cast<double>(rows));
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto [c0, c1] = column(c, cols, i2);
      const auto [vlo, vhi] = cell_range(samples, n_theta, n_phi, r0, r1, c0, c1);
      acc += boxes(vlo, vhi, eps);
    }
    total += weight * static_cast<double>(acc);
  }
  return total;
}

BoxCountSeries curve_series(std::span<const double> samples, int k_lo, int k_hi, bool periodic) {
  BoxCountSeries s;
  for (int k = k_lo; k <= k_hi; ++k)
    s.levels.push_back({k, std::ldexp(1.0, -k), box_count_curve(samples, k, periodic)});
  return s;
}

BoxCountSeries surface_series(std::span<const double> samples, std::size_t n1, std::size_t n2,
                              int k_lo, int k_hi, bool periodic) {
  BoxCountSeries s;
  for (int k = k_lo; k <= k_hi; ++k)
    s.levels.push_back({k, std::ldexp(1.0, -k), box_count_surface(samples, n1, n2, k, periodic)});
  return s;
}

DimensionEstimate dimension_fit(const BoxCountSeries& series, int k_lo, int k_hi) {
  std::vector<double> xs, ys;
  for (const auto& l : series.levels) {
    if (l.k < k_lo || l.k > k_hi) continue;
    xs.push_back(l.k);
    ys.push_back(std::log2(static_cast<double>(l.count)));
  }
  if (xs.size() < 4) throw InputError("dimension fit needs at least four levels in the window");
  const auto line = fit_line(xs, ys);
  DimensionEstimate est;
  est.slope = line.slope;
  est.stderr_slope = line.stderr_slope;
  est.k_lo = k_lo;
  est.k_hi = k_hi;
  return est;
}

DimT dim_t(const evolve::SampledField& field, FitWindow window) {
  DimT out;
  for (bool real : {true, false}) {
    const auto comp = component(field, real);
    DimensionEstimate est;
    switch (field.domain) {
      case evolve::Domain::torus1d:
      case evolve::Domain::sphere_greatcircle:
        est = dimension_fit(curve_series(comp, window.k_lo, window.k_hi,
                                         field.domain == evolve::Domain::torus1d),
                            window.k_lo, window.k_hi);
        break;
      case evolve::Domain::torus2d:
        est = dimension_fit(surface_series(comp, field.sizes[0], field.sizes[1], window.k_lo,
                                           window.k_hi, true),
                            window.k_lo, window.k_hi);
        break;
      case evolve::Domain::sphere_surface: {
        std::vector<double> xs, ys;
        for (int k = window.k_lo; k <= window.k_hi; ++k) {
          xs.push_back(k);
          ys.push_back(std::log2(box_count_sphere(comp, field.sizes[0], field.sizes[1], k)));
        }
        if (xs.size() < 4) throw InputError("dimension fit needs at least four levels in the window");
        const auto line = fit_line(xs, ys);
        est.slope = line.slope;
        est.stderr_slope = line.stderr_slope;
        est.k_lo = window.k_lo;
        est.k_hi = window.k_hi;
        break;
      }
    }
    est.component = real ? "real" : "imag";
    (real ? out.real : out.imag) = est;
  }
  out.max = std::max(out.real.slope, out.imag.slope);
  return out;
}

DimT dim_t_torus(const spectra::TorusSpectrum& f, const evolve::TimePoint& t, std::size_t grid,
                 FitWindow window) {
  const std::vector<std::size_t> sizes(static_cast<std::size_t>(f.dim()), grid);
  auto field = evolve::evaluate_torus(evolve::propagate_torus(f, t), sizes);
  field.t = t.value();
  return dim_t(field, window);
}

DimT dim_t_zonal(const spectra::ZonalSpectrum& f, const evolve::TimePoint& t, std::size_t points,
                 FitWindow window) {
  auto field = evolve::evaluate_zonal(evolve::propagate_sphere(f, t), points);
  field.t = t.value();
  return dim_t(field, window);
}

DimT dim_t_beam_equator(const spectra::BeamSpectrum& f, const evolve::TimePoint& t,
                        std::size_t points, FitWindow window) {
  auto field = evolve::evaluate_beam_equator(evolve::propagate_sphere(f, t), points);
  field.t = t.value();
  return dim_t(field, window);
}

DimT dim_t_beam_surface(const spectra::BeamSpectrum& f, const evolve::TimePoint& t,
                        std::size_t n_theta, std::size_t n_phi, FitWindow window) {
  auto field = evolve::evaluate_beam_surface(evolve::propagate_sphere(f, t), n_theta, n_phi);
  field.t = t.value();
  return dim_t(field, window);
}

}  // namespace talbot::fractal
