#pragma once

#include <cstddef>
#include <vector>

namespace talbot {

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x^2)^{(d-2)/2}.
/// With K nodes it integrates polynomials of degree <= 2K - 1 exactly, so
/// every zonal integral (omega_{d-1}/omega_d) * sum_i w_i prod_j Y_{n_j}(x_i)
/// is exact once K >= (sum n_j)/2 + 1.
class QuadratureRule {
 public:
  QuadratureRule() = default;
  QuadratureRule(int node_count, int sphere_dim);

  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Highest polynomial degree integrated exactly.
  int exact_degree() const { return 2 * static_cast<int>(nodes_.size()) - 1; }

  /// Weights scaled by omega_{d-1}/omega_d: sphere averages of zonal functions
  /// become plain dot products with these.
  const std::vector<double>& sphere_weights() const { return sphere_weights_; }

 private:
  int dim_ = 2;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> sphere_weights_;
};

/// Row-major table Y_n(x_i), i over rule nodes, n = 0..n_max.
class ZonalTable {
 public:
  ZonalTable(const QuadratureRule& rule, int n_max);

  int n_max() const { return n_max_; }
  std::size_t nodes() const { return rows_; }
  const double* row(std::size_t node) const { return values_.data() + node * stride_; }
  double operator()(std::size_t node, int n) const { return values_[node * stride_ + n]; }

 private:
  int n_max_;
  std::size_t rows_;
  std::size_t stride_;
  std::vector<double> values_;
};

}  // namespace talbot
