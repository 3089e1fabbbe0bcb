#pragma once

// Linear Schrodinger propagators on T^d and on the zonal, fixed-order and beam
// sectors of S^d, grid synthesis, and rational-time quantization.
//
// Phases follow e^{+it|m|^2} on the torus and e^{+itn(n+d-1)} on the sphere.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "talbot/spectra.hpp"

namespace talbot::evolve {

using spectra::cplx;

/// A time t. Rational times t = 2 pi p / q keep p and q so that phases
/// e^{itk} are reduced exactly in integer arithmetic.
class TimePoint {
 public:
  enum class Kind { rational, sampled, arbitrary };

  TimePoint() = default;
  static TimePoint rational(std::int64_t p, std::int64_t q);
  /// A generic time drawn for an "almost every t" experiment.
  static TimePoint sampled(double t);
  static TimePoint arbitrary(double t);

  double value() const { return t_; }
  Kind kind() const { return kind_; }
  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }

  /// e^{itk} for an integer frequency k.
  cplx phase(std::int64_t k) const;

  std::string label() const;

 private:
  double t_ = 0.0;
  Kind kind_ = Kind::rational;
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

/// 2 pi * {(sqrt5-1)/2, sqrt2-1, sqrt3-1, e-2} followed by `draws` seeded
/// uniform times in (0, 2 pi).
std::vector<TimePoint> time_panel(std::uint64_t seed = 20240611, int draws = 4);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class Domain { torus1d, torus2d, sphere_greatcircle, sphere_surface };

std::string to_string(Domain d);

/// Samples on a uniform grid. Torus grids cover [0, 2pi) per axis with
/// x_j = 2 pi j / n; great-circle grids cover [0, pi] with theta_j = pi j / (n-1).
/// Surface grids are (theta, phi) with theta as on the great circle and phi
/// as on the torus.
struct SampledField {
  Domain domain = Domain::torus1d;
  std::vector<std::size_t> sizes;
  std::vector<cplx> values;  // row-major, last axis fastest
  double t = 0.0;

  std::size_t count() const;
  double coordinate(std::size_t axis, std::size_t j) const;
  void write_csv(std::ostream& out) const;
  std::string metadata_json() const;
};

spectra::TorusSpectrum propagate_torus(const spectra::TorusSpectrum& f, const TimePoint& t);
spectra::ZonalSpectrum propagate_sphere(const spectra::ZonalSpectrum& f, const TimePoint& t);
spectra::FiberSpectrum propagate_sphere(const spectra::FiberSpectrum& f, const TimePoint& t);
spectra::BeamSpectrum propagate_sphere(const spectra::BeamSpectrum& f, const TimePoint& t);

/// sum f^(m) e^{im.x} on the grid, by FFT. Throws ResolutionError when a grid
/// axis is shorter than 2 * radius + 1 unless `allow_aliasing` is set.
SampledField evaluate_torus(const spectra::TorusSpectrum& f, std::span<const std::size_t> sizes,
                            bool allow_aliasing = false);
/// Reference path: direct summation.
SampledField evaluate_torus_direct(const spectra::TorusSpectrum& f,
                                   std::span<const std::size_t> sizes);

/// u(theta) = sum a_n Y_n(theta) on `points` equispaced angles in [0, pi].
SampledField evaluate_zonal(const spectra::ZonalSpectrum& f, std::size_t points);

/// Beam series sum a_n Y_n^{sign n} on the equator theta = pi/2, phi_j = 2 pi j / points.
SampledField evaluate_beam_equator(const spectra::BeamSpectrum& f, std::size_t points);
/// Same on a (theta, phi) grid of S^2.
SampledField evaluate_beam_surface(const spectra::BeamSpectrum& f, std::size_t n_theta,
                                   std::size_t n_phi);

struct QuantizationResult {
  double residual = 0.0;          // sup-norm gap on the grid
  std::vector<cplx> weights;      // c_l, l = 0..q-1
  std::size_t grid = 0;
};

/// Rebuilds the time-2pi p/q solution from q translates of the data with
/// weights c_l = (1/q) sum_n e^{2 pi i p n^2 / q} e^{2 pi i n l / q} and
/// compares with propagate + evaluate. `grid` = 0 picks a multiple of q
/// of at least 2 * (2 radius + 1) points.
QuantizationResult quantization_check(const spectra::TorusSpectrum& f, std::int64_t p,
                                      std::int64_t q, std::size_t grid = 0);

}  // namespace talbot::evolve
