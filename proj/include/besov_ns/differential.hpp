#pragma once

#include "besov_ns/spectral_field.hpp"

namespace besov_ns {

// Exact spectral derivatives (d_j <-> i xi_j). Every result has its Nyquist
// planes zeroed.

SpectralField partial(const SpectralField& f, int axis);

/// scalar -> vector
SpectralField grad(const SpectralField& f);
/// vector -> scalar, or matrix -> vector with (div W)_i = d_j W_ij
SpectralField div(const SpectralField& f);
/// vector -> antisymmetric matrix, (curl v)_ij = d_j v_i - d_i v_j
SpectralField curl(const SpectralField& v);
/// any rank
SpectralField laplacian(const SpectralField& f);
/// Lambda^s = |D|^s on any rank. The mean is annihilated for s != 0.
SpectralField lambda(const SpectralField& f, double s = 1.0);

enum class DiffOp { grad, div, curl, laplacian, lambda };

/// Dispatcher over the operators above; `s` is used by DiffOp::lambda only.
SpectralField differential(const SpectralField& f, DiffOp op, double s = 1.0);

}  // namespace besov_ns
