#pragma once

// Box-counting dimension of graphs of sampled functions.
//
// At level k the domain is split into 2^k columns (4^k cells in 2-D) and each
// column contributes floor((max - min) / eps) + 1 boxes, eps = 2^{-k}. Column
// extrema include the samples on both column edges.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "talbot/evolve.hpp"
#include "talbot/spectra.hpp"

namespace talbot::fractal {

struct BoxCount {
  int k = 0;
  double epsilon = 1.0;
  std::uint64_t count = 0;
};

struct BoxCountSeries {
  std::vector<BoxCount> levels;
  void write_csv(std::ostream& out) const;
};

struct DimensionEstimate {
  double slope = 0.0;
  double stderr_slope = 0.0;
  int k_lo = 0;
  int k_hi = 0;
  std::string component = "real";
  std::string to_json() const;
};

/// Count for a curve sampled on n points. A periodic grid covers [0, L) and
/// wraps the last column onto the first sample; a closed grid covers [0, L]
/// with both endpoints. Needs at least 4 * 2^k grid intervals.
std::uint64_t box_count_curve(std::span<const double> samples, int k, bool periodic = true);

/// Count for a surface on an n1 x n2 row-major grid (both axes periodic or
/// both closed).
std::uint64_t box_count_surface(std::span<const double> samples, std::size_t n1, std::size_t n2,
                                int k, bool periodic = true);

/// S^2 surface on a closed-theta / periodic-phi grid. Each cell count is
/// weighted by sin(theta) at the cell centre, so the total tracks surface area.
double box_count_sphere(std::span<const double> samples, std::size_t n_theta, std::size_t n_phi,
                        int k);

BoxCountSeries curve_series(std::span<const double> samples, int k_lo, int k_hi,
                            bool periodic = true);
BoxCountSeries surface_series(std::span<const double> samples, std::size_t n1, std::size_t n2,
                              int k_lo, int k_hi, bool periodic = true);

/// Least-squares slope of log2 N against k over [k_lo, k_hi] (at least 4 levels).
DimensionEstimate dimension_fit(const BoxCountSeries& series, int k_lo, int k_hi);

struct FitWindow {
  int k_lo = 5;
  int k_hi = 11;
};

inline constexpr FitWindow kCurveWindow{5, 11};
inline constexpr FitWindow kSurfaceWindow{2, 7};

struct DimT {
  DimensionEstimate real;
  DimensionEstimate imag;
  double max = 0.0;
};

/// Both components of a sampled field. Torus fields are periodic; the
/// great-circle slice is closed; sphere-surface fields use area weights.
DimT dim_t(const evolve::SampledField& field, FitWindow window);

DimT dim_t_torus(const spectra::TorusSpectrum& f, const evolve::TimePoint& t, std::size_t grid,
                 FitWindow window);
DimT dim_t_zonal(const spectra::ZonalSpectrum& f, const evolve::TimePoint& t, std::size_t points,
                 FitWindow window);
DimT dim_t_beam_equator(const spectra::BeamSpectrum& f, const evolve::TimePoint& t,
                        std::size_t points, FitWindow window);
DimT dim_t_beam_surface(const spectra::BeamSpectrum& f, const evolve::TimePoint& t,
                        std::size_t n_theta, std::size_t n_phi, FitWindow window);

}  // namespace talbot::fractal
