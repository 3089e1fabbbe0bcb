#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace talbot {

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;  // 0 for an exact fit or fewer than 3 points
  std::size_t points = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Power-law exponent: slope of log2(value) against log2(scale). Points with
/// non-positive value are dropped; their scales are returned in `dropped`.
struct PowerFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  std::vector<double> dropped;
  std::size_t used = 0;
};

PowerFit fit_power_law(std::span<const double> scale, std::span<const double> value);

double median(std::vector<double> values);

}  // namespace talbot
