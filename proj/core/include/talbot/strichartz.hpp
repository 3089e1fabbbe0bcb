#pragma once

// Space-time norms of zonal Schrodinger evolutions on S^d, computed exactly by
// grouping mode pairs with equal total frequency tau (Parseval in t).
//
// Measures are normalized: (1/omega_d) dsigma in space and dt / (2 pi) on [0, 2 pi].

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "talbot/spectra.hpp"

namespace talbot::strichartz {

using spectra::ZonalSpectrum;

/// tau -> pairs (n, m), n in [N, 2N), m in [M, 2M), tau = lambda_n + lambda_m,
/// lambda_k = k(k+d-1).
struct PairFrequencyDecomposition {
  std::map<std::int64_t, std::vector<std::pair<int, int>>> classes;
  std::size_t pair_count() const;
};

PairFrequencyDecomposition pair_decomposition(int N, int M, int d = 2);

/// #{(n, m) : n in [N, 2N), m in [M, 2M), n(n+1) + m(m+1) = tau}.
std::int64_t alpha_count(int N, int M, std::int64_t tau);

/// max over tau of alpha_count(N, M, tau).
std::int64_t alpha_max(int N, int M);

/// ||P_N(e^{it Delta} f) P_M(e^{it Delta} g)||_{L^2(S^d x [0, 2pi])}.
double bilinear_l2(const ZonalSpectrum& f, const ZonalSpectrum& g, int N, int M);

/// ||P_N e^{it Delta} f||_{L^4(S^d x [0, 2pi])} with P_N the block N <= n < 2N.
double l4_norm_spacetime(const ZonalSpectrum& f, int N);

/// Same norm by brute force on a uniform t-grid and Gauss-Jacobi in space.
/// Meant for small N only; t_points = 0 picks an exact grid.
double l4_norm_spacetime_grid(const ZonalSpectrum& f, int N, std::size_t t_points = 0);

/// ||Y_n^n||_{L^4(S^2)}^4 by Gauss-Legendre quadrature in cos(theta).
double l4_norm_beam(int n);

/// c_n^4 B(1/2, 2n+1) / 2, the closed form of the same quantity.
double l4_norm_beam_closed_form(int n);

}  // namespace talbot::strichartz
