#pragma once

#include "besov_ns/spectral_field.hpp"

namespace besov_ns {

/// Physical samples of a field on the padded grid used for pseudospectral
/// products. With dealiasing the padded grid has M = 3N/2 points per axis
/// (2/3 rule); otherwise M = N. Input Nyquist planes are ignored.
struct PaddedSamples {
  Grid grid;  // grid of the spectral field these samples came from
  Rank rank = Rank::scalar;
  int padded_size = 0;
  Eigen::ArrayXXd values;  // (M^n x components)
};

int padded_size(const Grid& grid, bool dealias);

PaddedSamples to_padded(const SpectralField& f, bool dealias = true);

/// Forward transform of padded samples, truncated back to the field's grid;
/// Nyquist planes of the result are zero.
SpectralField from_padded(const PaddedSamples& samples);

/// Pointwise product s * f for scalar s and f of any rank.
SpectralField multiply(const SpectralField& s, const SpectralField& f, bool dealias = true);

/// Transport term (v . grad) f for a vector field v and scalar or vector f.
SpectralField advect(const SpectralField& v, const SpectralField& f, bool dealias = true);

}  // namespace besov_ns
