#pragma once

// Jacobi polynomials with alpha = beta = (d-2)/2, zonal kernels and zonal
// harmonics on S^d, spherical harmonics and Gaussian beams on S^2.
//
// Normalization: every harmonic returned here has unit norm under the
// averaged inner product <f, g> = (1/omega_d) * integral f conj(g) dsigma.
// For d = 2 that gives Y_n(theta) = sqrt(2n+1) P_n(cos theta).

#include <cmath>
#include <complex>
#include <span>

namespace talbot::specialfun {

/// Degree n, order k and sphere dimension d of a spherical harmonic.
/// Orders other than 0 exist only on S^2.
struct HarmonicIndex {
  int degree = 0;
  int order = 0;
  int dim = 2;

  HarmonicIndex() = default;
  HarmonicIndex(int n, int k, int d);
};

/// Surface volumes omega_d = |S^d| and omega_{d-1}.
class SphereConstants {
 public:
  explicit SphereConstants(int d);

  int dim() const { return dim_; }
  double omega() const { return omega_; }
  double omega_lower() const { return omega_lower_; }
  /// omega_{d-1} / omega_d, the weight in front of every zonal integral.
  double zonal_ratio() const { return omega_lower_ / omega_; }

 private:
  int dim_;
  double omega_;
  double omega_lower_;
};

/// |S^d| = 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double sphere_volume(int d);

/// P_n^{(a,a)}(x), a = (d-2)/2, by three-term recurrence.
double jacobi_symmetric(int n, int d, double x);

/// P_n^{(a,a)}(1) = Gamma(n+a+1) / (n! Gamma(a+1)).
double jacobi_symmetric_at_one(int n, int d);

/// Reproducing kernel of the degree-n eigenspace evaluated at tau = <x, y>.
double zonal_kernel(int n, int d, double tau);

/// Z_n(1), the dimension of the degree-n eigenspace of S^d.
double eigenspace_dimension(int n, int d);

/// Unit-norm zonal harmonic Y_n as a function of the polar angle.
double zonal_harmonic(int n, int d, double theta);
/// Same, as a function of x = cos(theta).
double zonal_harmonic_cos(int n, int d, double x);

/// Normalization constants sqrt(Z_n(1)) for n = 0..out.size()-1.
void zonal_norms(int d, std::span<double> out);

/// Y_0(x) .. Y_{out.size()-1}(x) in one pass; `norms` from zonal_norms().
/// The loop is the hot path of the grid synthesizers.
inline void zonal_harmonics_all(int d, double x, std::span<const double> norms,
                                std::span<double> out) {
  const std::size_t count = out.size();
  if (count == 0) return;
  const double lambda = 0.5 * (d - 1);
  double r_prev = 1.0;
  out[0] = norms[0];
  if (count == 1) return;
  double r = x;
  out[1] = norms[1] * r;
  for (std::size_t n = 1; n + 1 < count; ++n) {
    const double dn = static_cast<double>(n);
    const double r_next = (2.0 * (dn + lambda) * x * r - dn * r_prev) / (dn + 2.0 * lambda);
    r_prev = r;
    r = r_next;
    out[n + 1] = norms[n + 1] * r;
  }
}

/// Y_n^k(theta, phi) on S^2 with the Condon-Shortley phase.
std::complex<double> sph_harmonic_s2(int n, int k, double theta, double phi);

/// Y_n^{sign*n}(theta, phi) on S^2, sign = +1 or -1.
std::complex<double> gaussian_beam(int n, int sign, double theta, double phi);

/// Modulus constant c_n with |Y_n^{+-n}| = c_n sin^n(theta), in log space.
double gaussian_beam_log_constant(int n);

struct AsymptoticConfig {
  double window = 8.0;     // valid for theta in [window/n, pi - window/n]
  double remainder = 1.0;  // C in the remainder bound
};

struct AsymptoticValue {
  double value = 0.0;
  double remainder_bound = 0.0;
};

/// Leading Szego term n^{-1/2} k(theta) cos(M theta + gamma) for
/// P_n^{(a,a)}(cos theta) and the bound C n^{-3/2} k(theta) / sin(theta) on the
/// remainder. Throws DomainError outside the validity window.
AsymptoticValue jacobi_asymptotic(int n, int d, double theta, const AsymptoticConfig& cfg = {});

/// n^{(d-1)/2} / <n theta>^{(d-1)/2}, the predicted size of |Y_n(theta)|.
double envelope_magnitude(int n, int d, double theta);

/// Japanese bracket <x> = sqrt(1 + x^2).
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace talbot::specialfun
