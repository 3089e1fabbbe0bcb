#pragma once

// Weighted Weyl sums, quadratic Gauss sums and dyadic decay fits.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "talbot/evolve.hpp"
#include "talbot/fit.hpp"

namespace talbot::expsum {

using cplx = std::complex<double>;

struct WeylBlockResult {
  int N = 0;
  double sup = 0.0;
  double argmax_x = 0.0;
  int argmax_u = 0;
};

/// sup over x_j = 2 pi j / grid and u in [N, 2N] of
///   |sum_{n=N}^{u} e^{i n^2 t + i n x} a^n b_n|,
/// with weights[i] = b_{N+i}, i = 0..N, and 0^0 = 1. grid = 0 means 16 N.
WeylBlockResult weyl_block_sup(const evolve::TimePoint& t, int N, std::span<const double> weights,
                               double a = 1.0, std::size_t grid = 0);

/// b_n = n^{-p} for n = N..2N (N >= 1).
std::vector<double> power_weights(int N, double p);

/// sum_{n=0}^{q-1} e^{2 pi i p n^2 / q}.
cplx gauss_sum(std::int64_t p, std::int64_t q);

/// sup over a grid^d grid of |sum_{N <= max|m_i| < 2N} e^{it|m|^2 + im.x}|, from
/// the one-dimensional sums over the full box minus the inner box. d in {1, 2}.
/// grid = 0 means 16 N.
double torus_weyl_sup(const evolve::TimePoint& t, int N, int d, std::size_t grid = 0);

/// Number of lattice points with N <= max|m_i| < 2N in Z^d.
std::int64_t shell_count(int N, int d);

/// Power-law exponent of value against N; at least five positive points.
PowerFit decay_slope_fit(std::span<const double> N, std::span<const double> value);

/// |sum_n e^{i theta_n} b_n - (sum_n (b_n - b_{n+1}) S_n + b_last S_last)|
/// where S are the partial sums of e^{i theta_n}. `weights` has one more entry
/// than `phases`.
double summation_by_parts_residual(std::span<const double> phases, std::span<const double> weights);

}  // namespace talbot::expsum
