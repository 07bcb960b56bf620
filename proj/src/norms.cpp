#include "besov_ns/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace besov_ns {

double lebesgue_norm(const PhysicalField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent p must be >= 1");
  const Eigen::ArrayXd m = f.components() == 1 ? Eigen::ArrayXd(f.values().col(0).abs()) : f.magnitude();
  if (std::isinf(p)) return m.maxCoeff();
  const Grid& g = f.grid();
  const double cell = std::pow(g.spacing(), g.dim());
  if (p == 2.0) return std::sqrt(cell * m.square().sum());
  if (p == 1.0) return cell * m.sum();
  // Scale by the maximum so large p does not overflow.
  const double top = m.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow(cell * (m / top).pow(p).sum(), 1.0 / p);
}

double lebesgue_norm(const SpectralField& f, double p) { return lebesgue_norm(inverse(f), p); }

}  // namespace besov_ns
