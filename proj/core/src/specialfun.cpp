#include "talbot/specialfun.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "talbot/errors.hpp"

namespace talbot::specialfun {

namespace {

constexpr double kPi = std::numbers::pi;

void check_degree(int n, int d) {
  if (n < 0) throw DomainError("degree must be non-negative, got " + std::to_string(n));
  if (d < 2) throw DomainError("sphere dimension must be at least 2, got " + std::to_string(d));
}

void check_unit_interval(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("argument outside [-1, 1]");
}

void check_polar(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("polar angle outside [0, pi]");
}

// P_n(x) / P_n(1) for the symmetric Jacobi family, lambda = (d-1)/2.
// Accumulates in long double; the ratio stays in [-1, 1].
long double normalized_jacobi(int n, int d, double x) {
  const long double lambda = 0.5L * (d - 1);
  const long double xl = x;
  long double r_prev = 1.0L;
  if (n == 0) return r_prev;
  long double r = xl;
  for (int k = 1; k < n; ++k) {
    const long double kl = k;
    const long double next = (2.0L * (kl + lambda) * xl * r - kl * r_prev) / (kl + 2.0L * lambda);
    r_prev = r;
    r = next;
  }
  return r;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

HarmonicIndex::HarmonicIndex(int n, int k, int d) : degree(n), order(k), dim(d) {
  check_degree(n, d);
  if (std::abs(k) > n) throw IndexError("harmonic order |k| exceeds degree");
  if (k != 0 && d != 2) throw IndexError("non-zonal orders are only supported on S^2");
}

double sphere_volume(int d) {
  if (d < 0) throw DomainError("sphere dimension must be non-negative");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::exp(h * std::log(kPi) - std::lgamma(h));
}

SphereConstants::SphereConstants(int d)
    : dim_(d), omega_(sphere_volume(d)), omega_lower_(d >= 1 ? sphere_volume(d - 1) : 2.0) {
  if (d < 2) throw DomainError("sphere dimension must be at least 2");
}

double jacobi_symmetric_at_one(int n, int d) {
  check_degree(n, d);
  const double a = 0.5 * (d - 2);
  return std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0));
}

double jacobi_symmetric(int n, int d, double x) {
  check_degree(n, d);
  check_unit_interval(x);
  if (n == 0) return 1.0;
  if (n == 1) return 0.5 * d * x;  // (a + 1) x
  return static_cast<double>(normalized_jacobi(n, d, x)) * jacobi_symmetric_at_one(n, d);
}

double eigenspace_dimension(int n, int d) {
  check_degree(n, d);
  // (2n+d-1)/(d-1) * binom(n+d-2, n)
  const double log_binom = std::lgamma(n + d - 1.0) - std::lgamma(n + 1.0) - std::lgamma(d - 1.0);
  return (2.0 * n + d - 1.0) / (d - 1.0) * std::exp(log_binom);
}

double zonal_kernel(int n, int d, double tau) {
  check_degree(n, d);
  check_unit_interval(tau);
  return eigenspace_dimension(n, d) * static_cast<double>(normalized_jacobi(n, d, tau));
}

double zonal_harmonic_cos(int n, int d, double x) {
  check_degree(n, d);
  check_unit_interval(x);
  return std::sqrt(eigenspace_dimension(n, d)) * static_cast<double>(normalized_jacobi(n, d, x));
}

double zonal_harmonic(int n, int d, double theta) {
  check_polar(theta);
  return zonal_harmonic_cos(n, d, std::cos(theta));
}

void zonal_norms(int d, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = std::sqrt(eigenspace_dimension(static_cast<int>(n), d));
}

std::complex<double> sph_harmonic_s2(int n, int k, double theta, double phi) {
  const HarmonicIndex idx(n, k, 2);
  check_polar(theta);
  const int m = std::abs(k);
  const double x = std::cos(theta);
  const double s = std::sin(theta);

  // Normalized Pbar_n^m = sqrt((n-m)!/(n+m)!) P_n^m, Condon-Shortley phase.
  double p_mm = 1.0;
  for (int i = 1; i <= m; ++i) p_mm *= -std::sqrt((2.0 * i - 1.0) / (2.0 * i)) * s;
  double p = p_mm;
  if (n > m) {
    double p_prev = p_mm;
    p = x * std::sqrt(2.0 * m + 1.0) * p_mm;
    for (int l = m + 2; l <= n; ++l) {
      const double denom = std::sqrt(static_cast<double>(l - m) * (l + m));
      const double next = ((2.0 * l - 1.0) * x * p -
                           std::sqrt(static_cast<double>(l - 1 - m) * (l - 1 + m)) * p_prev) /
                          denom;
      p_prev = p;
      p = next;
    }
  }
  double value = std::sqrt(2.0 * n + 1.0) * p;
  if (k < 0 && (m % 2 == 1)) value = -value;
  return value * std::polar(1.0, k * phi);
}

double gaussian_beam_log_constant(int n) {
  if (n < 0) throw DomainError("degree must be non-negative");
  return 0.5 * (std::log(2.0 * n + 1.0) + log_binomial(2 * n, n)) - n * std::numbers::ln2;
}

std::complex<double> gaussian_beam(int n, int sign, double theta, double phi) {
  if (sign != 1 && sign != -1) throw IndexError("beam sign must be +1 or -1");
  check_polar(theta);
  if (n == 0) return 1.0;
  const double s = std::sin(theta);
  double modulus = 0.0;
  if (s > 0.0) modulus = std::exp(gaussian_beam_log_constant(n) + n * std::log(s));
  if (sign == 1 && n % 2 == 1) modulus = -modulus;
  return modulus * std::polar(1.0, sign * n * phi);
}

AsymptoticValue jacobi_asymptotic(int n, int d, double theta, const AsymptoticConfig& cfg) {
  check_degree(n, d);
  if (n == 0) throw DomainError("asymptotic form needs n >= 1");
  const double lo = cfg.window / n;
  if (!(theta >= lo && theta <= kPi - lo))
    throw DomainError("theta outside the asymptotic validity window [c/n, pi - c/n]");
  const double s = std::sin(theta);
  const double big_m = n + 0.5 * (d - 1);
  const double gamma = -0.25 * (d - 1) * kPi;
  const double envelope = std::pow(2.0, 0.5 * (d - 1)) / std::sqrt(kPi) * std::pow(s, -0.5 * (d - 1));
  AsymptoticValue out;
  out.value = envelope * std::cos(big_m * theta + gamma) / std::sqrt(static_cast<double>(n));
  out.remainder_bound = cfg.remainder * envelope / (std::pow(static_cast<double>(n), 1.5) * s);
  return out;
}

double envelope_magnitude(int n, int d, double theta) {
  check_degree(n, d);
  check_polar(theta);
  if (theta > 0.5 * kPi) theta = kPi - theta;
  const double e = 0.5 * (d - 1);
  return std::pow(static_cast<double>(n), e) / std::pow(bracket(n * theta), e);
}

}  // namespace talbot::specialfun
