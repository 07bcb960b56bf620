#pragma once

#include <vector>

namespace besov_ns {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

/// Ordinary least squares y = slope x + intercept. Needs at least 3 points
/// and distinct xs (std::invalid_argument "degenerate xs" otherwise). R^2 is
/// 1 for constant ys fitted exactly.
FitResult fit_rate(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace besov_ns
