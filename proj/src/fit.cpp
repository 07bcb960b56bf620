#include "besov_ns/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace besov_ns {

FitResult fit_rate(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_rate: xs and ys differ in length");
  if (xs.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  const Eigen::Map<const Eigen::ArrayXd> x(xs.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> y(ys.data(), n);
  const Eigen::ArrayXd dx = x - x.mean();
  const double sxx = dx.square().sum();
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (!(sxx > 0.0) || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("degenerate xs");

  FitResult fit;
  fit.n_points = static_cast<int>(n);
  const Eigen::ArrayXd dy = y - y.mean();
  fit.slope = (dx * dy).sum() / sxx;
  fit.intercept = y.mean() - fit.slope * x.mean();
  const double ss_tot = dy.square().sum();
  const double ss_res = (dy - fit.slope * dx).square().sum();
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace besov_ns
