#pragma once

// Reference computations for the tests. Nothing here calls the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

struct Rule {
  std::vector<double> x, w;
};

// Gauss-Legendre on [-1, 1]: Newton on the Legendre recurrence in long double.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    r.x[i] = static_cast<double>(x);
    r.w[i] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
  }
  return r;
}

// Composite Gauss-Legendre on [a, b] with `panels` panels of `order` points.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64,
                        int order = 16) {
  static thread_local Rule cached;
  if (static_cast<int>(cached.x.size()) != order) cached = gauss_legendre(order);
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) acc += 0.5 * h * cached.w[i] * f(mid + 0.5 * h * cached.x[i]);
  }
  return acc;
}

// Legendre P_n(x) by the plain recurrence.
inline double legendre(int n, double x) {
  double p0 = 1, p1 = x;
  if (n == 0) return 1;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Gegenbauer C_n^{1}(x) = sin((n+1) theta) / sin(theta), the d = 3 zonal shape.
inline double chebyshev_u(int n, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-14) return n + 1.0;
  return std::sin((n + 1) * theta) / s;
}

// Unit-norm zonal harmonic on S^3: sin((n+1) theta) / sin(theta).
inline double y3(int n, double theta) { return chebyshev_u(n, theta); }

// Unit-norm zonal harmonic on S^2.
inline double y2(int n, double theta) { return std::sqrt(2.0 * n + 1.0) * legendre(n, std::cos(theta)); }

// (1/omega_d) integral over S^d of a zonal function g(theta), d in {2, 3}.
inline double sphere_mean(int d, const std::function<double(double)>& g, int panels = 64) {
  if (d == 2) return 0.5 * integrate([&](double t) { return g(t) * std::sin(t); }, 0.0, std::numbers::pi, panels);
  return (2.0 / std::numbers::pi) *
         integrate([&](double t) { return g(t) * std::sin(t) * std::sin(t); }, 0.0, std::numbers::pi, panels);
}

// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

}  // namespace oracle
