#pragma once

// Zonal cubic NLS on S^d, truncated to degrees n <= N:
//   a_n' = i n(n+d-1) a_n + i sigma P_N(|u|^2 u)_n,
// together with the Wick phase gamma and the smoothing residual.

#include <iosfwd>
#include <vector>

#include "talbot/quadrature.hpp"
#include "talbot/spectra.hpp"

namespace talbot::znls {

using spectra::cplx;
using spectra::ZonalSpectrum;

struct NLSState {
  ZonalSpectrum a;
  double t = 0.0;
  double phi = 0.0;  // integral_0^t gamma(s; u) ds
  int sigma = 1;

  double mass() const { return a.l2_norm_squared(); }
};

struct NLSConfig {
  int n_max = 64;
  double dt = 1e-3;
  double final_time = 0.1;
  int padding = 2;              // quadrature uses padding * n_max + 2 nodes
  int sigma = 1;
  bool nonlinear = true;
  int checkpoint_every = 0;     // 0 keeps only the initial and final states
  int max_iterations = 100;     // Crank-Nicolson fixed point
  double tolerance = 1e-15;
};

class NLSSolver {
 public:
  NLSSolver(int d, int n_max, int padding = 2);

  int dim() const { return d_; }
  int n_max() const { return n_max_; }
  std::size_t nodes() const { return rule_.size(); }

  /// P_N(|u|^2 u) by evaluation at the quadrature nodes and projection.
  ZonalSpectrum nonlinearity_apply(const ZonalSpectrum& a) const;

  /// (2/pi) sum conj(a_k) a_l integral_0^pi Y_k Y_l dtheta; the imaginary part
  /// of the Hermitian form is written to `imag` when given.
  double gamma_phase(const ZonalSpectrum& a, double* imag = nullptr) const;

  /// Matrix entry (1/pi) integral_0^pi Y_k Y_l dtheta.
  double line_matrix(int k, int l) const;

  /// Half linear step, Crank-Nicolson step of the cubic term, half linear
  /// step. Phi advances by the trapezoid of gamma over the cubic substep.
  NLSState step_strang(const NLSState& s, double dt, const NLSConfig& cfg = {}) const;

  /// One step of the Wick-ordered equation: the cubic substep followed by
  /// the rotation e^{-i sigma (dt/2)(gamma_0 + gamma_1)}.
  NLSState step_wick(const NLSState& s, double dt, const NLSConfig& cfg = {}) const;

  /// Trajectory from t = 0 to cfg.final_time.
  std::vector<NLSState> solve(const ZonalSpectrum& u0, const NLSConfig& cfg) const;
  std::vector<NLSState> solve_wick(const ZonalSpectrum& u0, const NLSConfig& cfg) const;

 private:
  ZonalSpectrum cubic_substep(const ZonalSpectrum& a, double dt, int sigma,
                              const NLSConfig& cfg) const;
  ZonalSpectrum linear(const ZonalSpectrum& a, double dt) const;
  ZonalSpectrum averaged_nonlinearity(const ZonalSpectrum& a, const ZonalSpectrum& b) const;

  int d_;
  int n_max_;
  QuadratureRule rule_;
  ZonalTable table_;
  std::vector<double> line_;  // (n_max+1)^2, row-major
};

/// r = u(t) - e^{it n(n+d-1)} e^{i sigma Phi(t)} u0, coefficientwise.
ZonalSpectrum smoothing_residual_coeffs(const NLSState& state, const ZonalSpectrum& u0);

struct TailRow {
  int N = 0;
  double residual = 0.0;          // ||P_N r||
  double solution = 0.0;          // ||P_N u||
  double residual_weighted = 0.0; // ||P_N r|| N^{s+eps}
  double solution_weighted = 0.0; // ||P_N u|| N^{s+eps}
};

struct TailTable {
  std::vector<TailRow> rows;
  double residual_exponent = 0.0;  // power-law slope of ||P_N r|| in N
  double solution_exponent = 0.0;
  void write_csv(std::ostream& out) const;
};

/// Tail norms over sharp dyadic blocks N <= n < 2N, N = 1, 2, 4, ...; the
/// exponents are fitted over blocks with N >= fit_from and are NaN when fewer
/// than two of those blocks are non-zero.
TailTable smoothing_residual(const NLSState& state, const ZonalSpectrum& u0, double s, double eps,
                             int fit_from = 4);

/// JSON line {"t", "phi", "re": [...], "im": [...]}.
void write_checkpoint(std::ostream& out, const NLSState& state);

}  // namespace talbot::znls
