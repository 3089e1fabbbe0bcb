#include "talbot/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "talbot/errors.hpp"
#include "talbot/specialfun.hpp"

namespace talbot {

namespace {

// R_K(x) = P_K(x)/P_K(1) and its derivative, lambda = (d-1)/2.
std::pair<double, double> normalized_with_derivative(int k_deg, double lambda, double x) {
  double r_prev = 1.0;
  double r = x;
  for (int k = 1; k < k_deg; ++k) {
    const double next = (2.0 * (k + lambda) * x * r - k * r_prev) / (k + 2.0 * lambda);
    r_prev = r;
    r = next;
  }
  // (1 - x^2) R_K' = K (R_{K-1} - x R_K)
  const double deriv = k_deg * (r_prev - x * r) / (1.0 - x * x);
  return {r, deriv};
}

}  // namespace

QuadratureRule::QuadratureRule(int node_count, int sphere_dim) : dim_(sphere_dim) {
  if (node_count < 1) throw InputError("quadrature needs at least one node");
  if (sphere_dim < 2) throw DomainError("sphere dimension must be at least 2");
  const double alpha = 0.5 * (sphere_dim - 2);
  const double lambda = 0.5 * (sphere_dim - 1);
  const auto k_nodes = static_cast<std::size_t>(node_count);

  nodes_.assign(k_nodes, 0.0);
  if (k_nodes > 1) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(node_count);
    Eigen::VectorXd sub(node_count - 1);
    for (int k = 1; k < node_count; ++k) {
      const double kk = k;
      sub(k - 1) = std::sqrt(kk * (kk + 2.0 * alpha) /
                             ((2.0 * kk + 2.0 * alpha - 1.0) * (2.0 * kk + 2.0 * alpha + 1.0)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (std::size_t i = 0; i < k_nodes; ++i) nodes_[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    std::sort(nodes_.begin(), nodes_.end());

    for (double& x : nodes_) {
      for (int it = 0; it < 8; ++it) {
        const auto [r, dr] = normalized_with_derivative(node_count, lambda, x);
        const double step = r / dr;
        x -= step;
        if (std::abs(step) < 1e-17) break;
      }
    }
    // Exact reflection symmetry of the node set.
    for (std::size_t i = 0; i < k_nodes / 2; ++i) {
      const double v = 0.5 * (nodes_[k_nodes - 1 - i] - nodes_[i]);
      nodes_[i] = -v;
      nodes_[k_nodes - 1 - i] = v;
    }
    if (k_nodes % 2 == 1) nodes_[k_nodes / 2] = 0.0;
  }

  // Christoffel numbers: 1 / sum_k p_k(x)^2 with p_k orthonormal.
  const specialfun::SphereConstants sc(sphere_dim);
  std::vector<double> norms(k_nodes), ys(k_nodes);
  specialfun::zonal_norms(sphere_dim, norms);
  weights_.resize(k_nodes);
  sphere_weights_.resize(k_nodes);
  for (std::size_t i = 0; i < k_nodes; ++i) {
    specialfun::zonal_harmonics_all(sphere_dim, nodes_[i], norms, ys);
    double sum = 0.0;
    for (double y : ys) sum += y * y;
    sphere_weights_[i] = 1.0 / sum;
    weights_[i] = sphere_weights_[i] / sc.zonal_ratio();
  }
}

ZonalTable::ZonalTable(const QuadratureRule& rule, int n_max)
    : n_max_(n_max), rows_(rule.size()), stride_(static_cast<std::size_t>(n_max) + 1) {
  if (n_max < 0) throw InputError("ZonalTable: negative degree");
  values_.resize(rows_ * stride_);
  std::vector<double> norms(stride_);
  specialfun::zonal_norms(rule.dim(), norms);
  for (std::size_t i = 0; i < rows_; ++i)
    specialfun::zonal_harmonics_all(rule.dim(), rule.nodes()[i], norms,
                                    std::span<double>(values_.data() + i * stride_, stride_));
}

}  // namespace talbot
