#pragma once

#include "besov_ns/spectral_field.hpp"

#include <limits>

namespace besov_ns {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discrete L^p norm ((L/N)^n sum_x |f(x)|^p)^{1/p}, or max |f| for p = inf.
/// Vector and matrix fields use the pointwise Euclidean magnitude.
/// Throws std::invalid_argument for p < 1.
double lebesgue_norm(const PhysicalField& f, double p);
double lebesgue_norm(const SpectralField& f, double p);

}  // namespace besov_ns
