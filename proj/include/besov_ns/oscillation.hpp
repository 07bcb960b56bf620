#pragma once

#include "besov_ns/fit.hpp"
#include "besov_ns/besov.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace besov_ns {

enum class OscillationKind {
  scalar_modulated,  // e^{i x1 / eps} phi, stored as a real/imaginary pair
  planar_shear,      // sin(x1 / eps) phi e2, n = 2
  shear_velocity,    // sin(x3 / eps) (-d2 phi, d1 phi, 0), n = 3
};

std::string to_string(OscillationKind kind);
OscillationKind oscillation_kind_from_string(const std::string& name);

/// Periodic bump exp(-4 sum sin^2(x_i / 2)) minus its mean, scaled to the
/// period of the grid.
SpectralField envelope(const Grid& grid);

struct OscillatingField {
  OscillationKind kind = OscillationKind::scalar_modulated;
  double epsilon = 0.0;  // snapped value; +inf when 1/eps rounds to zero
  int mode = 0;          // integer lattice mode of the carrier
  SpectralField real;
  SpectralField imag;    // only for scalar_modulated

  /// Block norms of the pointwise modulus (real and imaginary parts
  /// together for scalar_modulated).
  BlockNorms blocks(const DyadicSystem& sys, double p) const;
};

/// 1/eps is snapped to the nearest lattice frequency. Throws
/// std::invalid_argument for eps <= 0, a kind that does not fit the grid
/// dimension, or "under-resolved oscillation" when 1/eps > Nyquist/2.
OscillatingField make_oscillating(const Grid& grid, OscillationKind kind, double epsilon);

struct OscillationReport {
  OscillationKind kind = OscillationKind::scalar_modulated;
  double p = 4.0;
  double R0 = 0.5;
  std::vector<double> epsilon;  // snapped
  std::vector<double> norm;     // hybrid norm at (n/2 - 1, n/p - 1)
  FitResult fit;                // log norm against log eps
  double expected_slope = 0.0;  // 1 - n/p
};

/// Hybrid norms of the oscillating datum over a sweep of eps and the fitted
/// exponent. No restriction on p; see oscillation_scaling_experiment.
OscillationReport oscillation_norm_sweep(const Grid& grid, OscillationKind kind, double p,
                                         const std::vector<double>& eps_list, double R0 = 0.5);

/// Same sweep restricted to p > n, where the exponent 1 - n/p is positive.
OscillationReport oscillation_scaling_experiment(const Grid& grid, OscillationKind kind, double p,
                                                 const std::vector<double>& eps_list, double R0 = 0.5);

/// Dyadic sweep 2^{-k_min}, ..., 2^{-k_max}.
std::vector<double> dyadic_epsilons(int k_min, int k_max);

/// CSV columns epsilon, norm, log_epsilon, log_norm.
void write_oscillation_csv(std::ostream& out, const OscillationReport& report);

}  // namespace besov_ns
