#pragma once

#include "besov_ns/littlewood_paley.hpp"

#include <functional>

namespace besov_ns {

/// fg = Tfg + Tgf + R with T_f g = sum_j S_{j-1} f Delta_j g and
/// R = sum_j Delta_j f (Delta_{j-1} + Delta_j + Delta_{j+1}) g + mean(f) mean(g).
/// On the torus the mean-mean product belongs to no dyadic block, so it is
/// carried by the remainder to keep the split exact.
struct BonySplit {
  SpectralField Tfg;
  SpectralField Tgf;
  SpectralField R;

  SpectralField sum() const { return Tfg + Tgf + R; }
};

/// Scalar f, g; products are 3/2-padded (dealiased).
BonySplit bony_split(const DyadicSystem& sys, const SpectralField& f, const SpectralField& g);

/// [v, Delta_j] . grad f = v . grad(Delta_j f) - Delta_j(v . grad f).
SpectralField commutator_field(const DyadicSystem& sys, const SpectralField& v, const SpectralField& f, int j);

/// Density floor below which 1 + a is treated as vacuum.
inline constexpr double kVacuumFloor = 1e-3;

/// F(f) evaluated pointwise on the grid and transformed back. `needs_positive_density`
/// enforces min(1 + f) > kVacuumFloor (std::domain_error "vacuum" otherwise).
SpectralField compose_pointwise(const SpectralField& f, const std::function<double(double)>& F,
                                bool needs_positive_density = false);

/// K(a) = (1 + a)^{gamma - 2} - 1.
SpectralField compose_K(const SpectralField& a, double gamma);
/// L(a) = a / (1 + a).
SpectralField compose_L(const SpectralField& a);

}  // namespace besov_ns
