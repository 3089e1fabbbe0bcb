#pragma once

// Experiment drivers shared by the command line tool and the acceptance suite.
// Panel drivers take the time panel explicitly; evolve::time_panel() is the
// seeded default.

#include <cstdint>
#include <string>
#include <vector>

#include "talbot/evolve.hpp"
#include "talbot/fractal.hpp"
#include "talbot/gaunt.hpp"
#include "talbot/spectra.hpp"
#include "talbot/znls.hpp"

namespace talbot::experiments {

/// Indicator of [0, pi) on T.
spectra::TorusSpectrum step_data(int radius);

/// Triangle (0,0), (pi,0), (pi,pi).
std::vector<spectra::Point2> default_triangle();

// ---------------------------------------------------------------------------

struct QuantizationRow {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double residual = 0.0;
};

struct QuantizationReport {
  int radius = 0;
  std::vector<QuantizationRow> rows;
  double worst = 0.0;
  double seconds = 0.0;
};

/// Every coprime p/q with 1 <= q <= q_max, 0 <= p < q.
QuantizationReport run_quantization(int radius, int q_max, int q_min = 1);

// ---------------------------------------------------------------------------

struct PanelRow {
  std::string label;
  double t = 0.0;
  double real = 0.0;
  double imag = 0.0;
  double value = 0.0;
};

struct PanelReport {
  std::vector<PanelRow> rows;
  double median = 0.0;
  double seconds = 0.0;
};

PanelReport run_torus_step_dimension(int radius, std::size_t grid, fractal::FitWindow window,
                                     const std::vector<evolve::TimePoint>& panel = evolve::time_panel());
PanelReport run_polygon_dimension(int radius, std::size_t grid, fractal::FitWindow window,
                                  const std::vector<evolve::TimePoint>& panel = evolve::time_panel());
/// Great-circle slice of zonal_decay_family(p) on S^2.
PanelReport run_zonal_dimension(double p, int n_max, std::size_t points, fractal::FitWindow window,
                                const std::vector<evolve::TimePoint>& panel = evolve::time_panel());
/// Beam series a_n = n^{-p} on the equator of S^2.
PanelReport run_beam_dimension(double p, int n_max, std::size_t points, fractal::FitWindow window,
                               const std::vector<evolve::TimePoint>& panel = evolve::time_panel());

// ---------------------------------------------------------------------------

struct HolderReport {
  PanelReport growth;   // value: slope of log2(2^{j gamma} ||P_j u||_inf)
  PanelReport holder;   // value: fitted Holder exponent
  std::vector<std::vector<double>> blocks;  // per panel time, per level
  int j_lo = 0;
  int j_hi = 0;
};

HolderReport run_zonal_holder(double p, int j_max, double gamma, int j_lo,
                              const std::vector<evolve::TimePoint>& panel = evolve::time_panel());

// ---------------------------------------------------------------------------

struct WeylReport {
  PanelReport exponents;
  std::vector<int> Ns;
  std::vector<std::vector<double>> sups;  // per panel time, per N
};

/// Weighted Weyl blocks with b_n = n^{-p}, N = 2^lo..2^hi.
WeylReport run_weyl(double p, int log2_lo, int log2_hi,
                    const std::vector<evolve::TimePoint>& panel = evolve::time_panel());
/// Unweighted torus shells in dimension d.
WeylReport run_torus_weyl(int d, int log2_lo, int log2_hi,
                          const std::vector<evolve::TimePoint>& panel = evolve::time_panel());

// ---------------------------------------------------------------------------

struct KappaReport {
  int entries = 0;
  double min_value = 0.0;          // over all tuples, d in {2, 3}
  double support_max = 0.0;        // max |kappa| over inadmissible tuples
  double permutation_max = 0.0;    // table lookups under index permutations
  double direct_max = 0.0;         // table against kappa() in unsorted order
  double parseval_max = 0.0;
  gaunt::LambdaConstants constants;
  gaunt::LambdaScan scan;
  int lambda_n = 0;
  double seconds = 0.0;
};

KappaReport run_kappa_suite(int entries, int lambda_n,
                            const gaunt::LambdaConstants& constants = gaunt::kCalibratedLambda);

// ---------------------------------------------------------------------------

struct ResonanceReport {
  std::vector<int> n;
  std::vector<double> difference;
  double exponent = 0.0;
  double bound_constant = 0.0;  // max |diff| n / (n2 n3)^{(d-1)/2}
};

ResonanceReport run_resonance(int n2, int n3, int d, int n_lo, int n_hi);

// ---------------------------------------------------------------------------

struct StrichartzReport {
  int N = 0;
  std::vector<int> M;
  std::vector<double> bilinear;
  std::vector<double> ratio;  // bilinear / (||P_N f|| ||P_M f||)
  double zonal_exponent = 0.0;
  std::vector<int> beam_n;
  std::vector<double> beam_l4;  // ||Y_n^n||_4^4
  double beam_exponent = 0.0;
  double seconds = 0.0;
};

StrichartzReport run_strichartz(double p, int N, int M_lo, int M_hi, int beam_lo, int beam_hi);

// ---------------------------------------------------------------------------

struct NLSReport {
  double mass_drift = 0.0;
  znls::TailTable tails;
  double exponent_gap = 0.0;  // solution exponent - residual exponent
  double single_mode_error = 0.0;
  double seconds = 0.0;
};

NLSReport run_nls_smoothing(int n_max, double p, double dt, double final_time, double s,
                            double eps, double single_mode_dt);

// ---------------------------------------------------------------------------

struct SpecfunReport {
  int n_ortho = 0;
  double orthonormality_max = 0.0;  // over d in {2, 3}
  std::vector<int> n;
  std::vector<double> constants;    // sup |P_n - asymptotic| / (n^{-3/2} k / sin)
  std::vector<double> literal;      // sup |P_n - asymptotic| / (n^{-3/2} / sin)
  double fitted_constant = 0.0;
  double spread = 0.0;              // max / min of the per-n constants
};

SpecfunReport run_specfun_check(int n_ortho, const std::vector<int>& ns, double window = 8.0);

}  // namespace talbot::experiments
