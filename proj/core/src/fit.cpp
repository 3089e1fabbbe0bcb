#include "talbot/fit.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"

namespace talbot {

namespace {
std::mutex g_worker_mutex;
std::size_t g_workers = 0;
}  // namespace

std::size_t worker_count() {
  std::lock_guard lock(g_worker_mutex);
  if (g_workers == 0) g_workers = std::max(1u, std::thread::hardware_concurrency());
  return g_workers;
}

void set_worker_count(std::size_t n) {
  std::lock_guard lock(g_worker_mutex);
  g_workers = std::max<std::size_t>(n, 1);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw InputError("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InputError("fit_line: abscissae are all equal");
  LineFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.stderr_slope = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

PowerFit fit_power_law(std::span<const double> scale, std::span<const double> value) {
  if (scale.size() != value.size()) throw InputError("fit_power_law: length mismatch");
  std::vector<double> lx, ly;
  PowerFit out;
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(value[i] > 0.0) || !(scale[i] > 0.0)) {
      out.dropped.push_back(scale[i]);
      continue;
    }
    lx.push_back(std::log2(scale[i]));
    ly.push_back(std::log2(value[i]));
  }
  const LineFit f = fit_line(lx, ly);
  out.exponent = f.slope;
  out.stderr_exponent = f.stderr_slope;
  out.used = f.points;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of empty sequence");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace talbot
