#pragma once

// Gaunt integrals of zonal harmonics,
//   kappa(n_1, ..., n_j) = (1/omega_d) integral_{S^d} Y_{n_1} ... Y_{n_j} dsigma,
// the resonance symbol H and the Lambda-set classification of index tuples.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "talbot/quadrature.hpp"

namespace talbot::gaunt {

/// kappa for 2, 3 or 4 indices by Gauss-Jacobi quadrature. node_count = 0
/// picks sum/2 + 8 nodes; fewer than sum/2 + 2 nodes throws ResolutionError.
double kappa(std::span<const int> indices, int d, int node_count = 0);

/// Cached kappa values with canonical (sorted) index storage, so permuted
/// index lists hit the same entry.
class KappaTable {
 public:
  /// Covers every index <= n_max exactly.
  KappaTable(int d, int n_max);

  int dim() const { return d_; }
  int n_max() const { return n_max_; }
  const QuadratureRule& rule() const { return rule_; }

  double operator()(int a, int b, int c) const;
  double operator()(int a, int b, int c, int e) const;
  double value(std::span<const int> indices) const;

  /// Fills every sorted 3- and 4-tuple with entries <= up_to (<= n_max).
  void fill(int up_to);
  std::size_t cached() const;

  /// JSON header line followed by a CSV body "arity,n1,n2,n3,n4,value".
  void save(std::ostream& out) const;
  static KappaTable load(std::istream& in);

 private:
  double compute(std::span<const int> sorted) const;

  int d_;
  int n_max_;
  QuadratureRule rule_;
  ZonalTable table_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  mutable std::unordered_map<std::uint64_t, double> cache_;
};

/// Whether no index exceeds the sum of the others (necessary for kappa != 0).
bool admissible(std::span<const int> indices);

/// |sum_n kappa(n,a,b) kappa(n,c,e) - kappa(a,b,c,e)|.
double parseval_compose_check(int a, int b, int c, int e, int d);

/// 4-index kappa assembled from 3-index values.
double kappa4_parseval(int a, int b, int c, int e, int d);

/// H = n(n+d-1) - n1(n1+d-1) + n2(n2+d-1) - n3(n3+d-1).
std::int64_t h_symbol(int n1, int n2, int n3, int n, int d);

enum class Lambda { lambda0, lambda1, lambda2, unclassified };
std::string to_string(Lambda l);

struct LambdaConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Frozen values from calibrate_lambda(64, 2), rounded down.
inline constexpr LambdaConstants kCalibratedLambda{0.764, 1.333};

/// Lambda0 if n1 = n or n3 = n; Lambda1 if <n1><n2><n3> >= c1 n^{3/2};
/// Lambda2 if |H| >= c2 max(n1,n2,n3) |n - max(n1,n3)|. Inadmissible tuples
/// throw InputError.
Lambda lambda_classify(int n1, int n2, int n3, int n, const LambdaConstants& c, int d = 2);

struct LambdaScan {
  std::int64_t admissible = 0;
  std::int64_t counts[4] = {0, 0, 0, 0};  // indexed by Lambda
};

/// Every admissible tuple with all indices <= n_max.
LambdaScan lambda_scan(int n_max, const LambdaConstants& c, int d = 2);

/// Pareto-optimal (c1, c2) with c2 > 0 that leaves no admissible tuple with
/// indices <= n_max unclassified, maximizing c1 * c2.
LambdaConstants calibrate_lambda(int n_max, int d = 2);

struct ResonanceComparison {
  double kappa = 0.0;
  double line = 0.0;
  double difference = 0.0;
};

/// kappa(n, n, n2, n3) against (1/pi) integral_0^pi Y_{n2} Y_{n3} dtheta.
ResonanceComparison resonance_compare(int n, int n2, int n3, int d);

/// (1/pi) integral_0^pi Y_a(theta) Y_b(theta) dtheta, exact midpoint rule.
double line_integral(int a, int b, int d);

}  // namespace talbot::gaunt
