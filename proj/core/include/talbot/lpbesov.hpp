#pragma once

// Littlewood-Paley blocks, Besov-type block norms, Holder exponent fits and the
// average shift operator on S^2.
//
// Dyadic levels j = 0, 1, 2, ...:
//   sphere: level 0 is n in {0, 1}, level j >= 1 is 2^j <= n < 2^{j+1};
//   torus:  level 0 is m = 0,      level j >= 1 is 2^{j-1} < max|m_i| <= 2^j.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "talbot/spectra.hpp"

namespace talbot::lpbesov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// C^infinity profile a with supp a in [1/2, 2] and a(t) + a(2t) = 1 on [1/2, 1].
/// Built from the transition S(x) = h(x) / (h(x) + h(1-x)), h(x) = e^{-1/x}:
/// a(t) = S(2t - 1) on [1/2, 1] and 1 - S(t - 1) on [1, 2].
class BumpProfile {
 public:
  explicit BumpProfile(std::size_t resolution = 4096);

  double operator()(double t) const;
  /// Tabulated samples a(1/2 + 3k/(2 resolution)), k = 0..resolution.
  const std::vector<double>& table() const { return table_; }
  std::size_t resolution() const { return resolution_; }
  /// min of a over [3/5, 5/3].
  double lower_bound() const;

 private:
  std::size_t resolution_;
  std::vector<double> table_;
};

/// Sharp projection onto N <= n < 2N.
spectra::ZonalSpectrum sharp_block(const spectra::ZonalSpectrum& f, int N);
/// Sharp projection onto N < max_i |m_i| <= 2N.
spectra::TorusSpectrum sharp_block(const spectra::TorusSpectrum& f, int N);

/// Sharp dyadic level j (see the convention above).
spectra::ZonalSpectrum level_block(const spectra::ZonalSpectrum& f, int j);
spectra::TorusSpectrum level_block(const spectra::TorusSpectrum& f, int j);

/// Weights a(2^{-j+1} n) for n = 0..n_max (j >= 1); j = 0 is the indicator of n = 0.
std::vector<double> smooth_block_weights(const BumpProfile& bump, int j, int n_max);
spectra::ZonalSpectrum smooth_block(const spectra::ZonalSpectrum& f, const BumpProfile& bump,
                                    int j);

struct BlockNorm {
  int j = 0;
  double p = 2.0;
  double value = 0.0;
};

struct BlockNormTable {
  std::vector<BlockNorm> entries;
  double lookup(int j, double p) const;  // NaN when absent
  void write_csv(std::ostream& out) const;
};

struct NormOptions {
  /// L^infinity grids have at least oversample * (top frequency) points.
  int oversample = 8;
  /// Explicit grid size; 0 chooses from `oversample`. A grid below the
  /// oversampling floor throws ResolutionError.
  std::size_t grid = 0;
};

/// L^p norm (p in {1, 2, inf}) of a zonal function under (1/omega_d) dsigma.
double lp_norm(const spectra::ZonalSpectrum& f, double p, const NormOptions& opts = {});
/// L^p norm on T^d under (2 pi)^{-d} dx.
double lp_norm(const spectra::TorusSpectrum& f, double p, const NormOptions& opts = {});

/// ||P_j u||_{L^p} for j = 0..j_max.
BlockNormTable block_norms(const spectra::ZonalSpectrum& f, double p, int j_max,
                           const NormOptions& opts = {});
BlockNormTable block_norms(const spectra::TorusSpectrum& f, double p, int j_max,
                           const NormOptions& opts = {});

/// sup-norms of every sharp level of several zonal spectra at once, sharing
/// one recurrence pass over the theta grid. Result[s][j] for spectrum s.
std::vector<std::vector<double>> zonal_level_sup_norms(
    const std::vector<spectra::ZonalSpectrum>& fs, int j_max, const NormOptions& opts = {});

struct BesovProbe {
  double value = 0.0;   // max_j 2^{j gamma} ||P_j u||_p
  int argmax_j = 0;
  std::vector<double> weighted;  // 2^{j gamma} ||P_j u||_p per level
};

BesovProbe besov_norm_probe(const spectra::ZonalSpectrum& f, double gamma, double p, int j_max,
                            const NormOptions& opts = {});
BesovProbe besov_norm_probe(const spectra::TorusSpectrum& f, double gamma, double p, int j_max,
                            const NormOptions& opts = {});
/// Same, from precomputed block norms (index j).
BesovProbe besov_from_blocks(const std::vector<double>& blocks, double gamma);

struct HolderFit {
  double gamma = 0.0;
  double stderr_gamma = 0.0;
  std::vector<int> dropped;  // levels with a zero block norm
  int used = 0;
};

/// Least-squares slope of -log2 ||P_j u||_inf against j for j in [j_lo, j_hi].
/// Needs at least five usable levels.
HolderFit holder_exponent_fit(const std::vector<double>& block_sup, int j_lo, int j_hi);

/// Slope of log2(2^{j gamma} ||P_j u||) against j over [j_lo, j_hi]; 0 means
/// bounded, positive values mean growth.
double besov_growth_slope(const std::vector<double>& blocks, double gamma, int j_lo, int j_hi);

/// Average of f over the circle at geodesic distance theta, as the multiplier
/// a_n -> P_n(cos theta) a_n (S^2 only).
spectra::ZonalSpectrum shift_operator_s2(const spectra::ZonalSpectrum& f, double theta);

}  // namespace talbot::lpbesov
