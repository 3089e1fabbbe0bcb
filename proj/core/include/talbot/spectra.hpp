#pragma once

// Spectrum containers and the initial-data families.
//
// Torus convention: T^d = [0, 2pi)^d, basis e^{i m.x},
//   f^(m) = (2pi)^{-d} * integral_{T^d} f(x) e^{-i m.x} dx.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace talbot::spectra {

using cplx = std::complex<double>;

/// Fourier coefficients on T^d supported in the box max_i |m_i| <= radius,
/// stored densely (row-major, last axis fastest).
class TorusSpectrum {
 public:
  TorusSpectrum() = default;
  TorusSpectrum(int dim, int radius);

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  std::size_t side() const { return side_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Whether the family is real-valued, i.e. f^(-m) = conj(f^(m)).
  bool real_valued() const { return real_valued_; }
  void set_real_valued(bool v) { real_valued_ = v; }

  bool contains(std::span<const int> m) const;
  cplx at(std::span<const int> m) const;  // zero outside the box
  cplx& ref(std::span<const int> m);      // throws IndexError outside the box

  // 1-D and 2-D shorthands.
  cplx operator()(int m) const;
  cplx operator()(int m1, int m2) const;
  cplx& ref(int m);
  cplx& ref(int m1, int m2);

  std::span<cplx> data() { return coeffs_; }
  std::span<const cplx> data() const { return coeffs_; }

  /// Multi-index of a flat storage position.
  std::vector<int> index_of(std::size_t flat) const;
  /// max_i |m_i| of a flat storage position.
  int sup_norm_of(std::size_t flat) const;
  /// |m|^2 of a flat storage position.
  std::int64_t norm2_of(std::size_t flat) const;

  double l2_norm_squared() const;
  /// max over the box of |f^(-m) - conj f^(m)|.
  double hermitian_defect() const;

 private:
  std::size_t flat(std::span<const int> m) const;

  int dim_ = 1;
  int radius_ = 0;
  std::size_t side_ = 1;
  bool real_valued_ = false;
  std::vector<cplx> coeffs_;
};

/// Coefficients a_n, n = 0..n_max, of a zonal function sum a_n Y_n on S^d.
struct ZonalSpectrum {
  int dim = 2;
  std::vector<cplx> coeffs;

  ZonalSpectrum() = default;
  ZonalSpectrum(int d, int n_max);

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }
  double l2_norm_squared() const;
  /// sqrt(sum <n>^{2s} |a_n|^2)
  double sobolev_norm(double s) const;
};

/// Fixed order k on S^2: coefficients on Y_n^k for n >= |k|; coeffs[i] is n = |k| + i.
struct FiberSpectrum {
  int order = 0;
  std::vector<cplx> coeffs;

  FiberSpectrum() = default;
  FiberSpectrum(int k, int n_max);

  int first_degree() const { return order < 0 ? -order : order; }
  int n_max() const { return first_degree() + static_cast<int>(coeffs.size()) - 1; }
  cplx at(int n) const;
  cplx& ref(int n);
  double l2_norm_squared() const;
};

/// Coefficients on the Gaussian beams Y_n^{sign*n}, n = 0..n_max.
struct BeamSpectrum {
  int sign = 1;
  std::vector<cplx> coeffs;

  BeamSpectrum() = default;
  BeamSpectrum(int s, int n_max);

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }
  double l2_norm_squared() const;
};

/// Mixed and first differences of a 2-D spectrum at m.
struct SigmaDifferences {
  cplx sigma;
  cplx sigma1;
  cplx sigma2;
};

SigmaDifferences sigma_differences(const TorusSpectrum& f, int m1, int m2);

// ---------------------------------------------------------------------------
// Initial-data families

/// Breakpoint of piecewise-constant data: the function takes `value` on
/// [position, next position), cyclically around T.
struct Jump {
  double position = 0.0;
  cplx value = 0.0;
};

/// Fourier coefficients of piecewise-constant data on T.
TorusSpectrum torus_step(std::vector<Jump> jumps, int radius);

/// Total variation of piecewise-constant data, sum of |jump sizes|.
double step_variation(std::vector<Jump> jumps);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Exact coefficients of the indicator of a simple polygon in [0, 2pi)^2.
/// The polygon is ear-clipped into triangles starting from vertex
/// `triangulation_start`; every triangle is a signed sum of edge trapezoids
/// (a rectangle plus an axis-aligned right triangle each).
TorusSpectrum torus_polygon_indicator(const std::vector<Point2>& vertices, int radius,
                                      std::size_t triangulation_start = 0);

/// Coefficient of the polygon indicator at a single m (same algorithm).
cplx polygon_coefficient(const std::vector<Point2>& vertices, int m1, int m2,
                         std::size_t triangulation_start = 0);

/// Ear-clipping triangulation; triangles are counter-clockwise index triples.
std::vector<std::array<std::size_t, 3>> triangulate(const std::vector<Point2>& vertices,
                                                    std::size_t start = 0);

double polygon_signed_area(const std::vector<Point2>& vertices);

/// a_0 = 1, a_n = n^{-p}.
ZonalSpectrum zonal_decay_family(double p, int n_max, int d = 2);

/// Same magnitudes with phases e^{i phi_n}, phi_n uniform from a seeded engine.
ZonalSpectrum zonal_decay_family_random_phase(double p, int n_max, std::uint64_t seed, int d = 2);

/// f^(m) = <m>^{-1-s} on T^2.
TorusSpectrum torus_decay_family_2d(double s, int radius);

/// f^(m) = prod_i f_i^(m_i).
TorusSpectrum tensor_data(const std::vector<TorusSpectrum>& factors);

/// Single-mode helpers.
TorusSpectrum torus_mode(int dim, int radius, std::span<const int> m, cplx value = 1.0);

// ---------------------------------------------------------------------------
// Serialization: {"convention", "d", "entries": [{"m" | "n", "re", "im"}]}

std::string to_json(const TorusSpectrum& s);
std::string to_json(const ZonalSpectrum& s);
TorusSpectrum torus_from_json(const std::string& text);
ZonalSpectrum zonal_from_json(const std::string& text);

}  // namespace talbot::spectra
