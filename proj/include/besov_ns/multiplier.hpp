#pragma once

#include "besov_ns/spectral_field.hpp"

#include <functional>

namespace besov_ns {

/// A Fourier multiplier sigma(D): a scalar or n x n matrix symbol defined on
/// the dual lattice, with an explicit value at xi = 0.
class Multiplier {
 public:
  using Xi = Eigen::Ref<const Eigen::VectorXd>;
  using ScalarSymbol = std::function<Complex(const Xi&)>;
  using MatrixSymbol = std::function<Eigen::MatrixXcd(const Xi&)>;

  /// Scalar symbol; `at_zero` replaces the symbol at xi = 0.
  static Multiplier scalar(ScalarSymbol symbol, Complex at_zero);
  /// Radial scalar symbol sigma(|xi|).
  static Multiplier radial(std::function<Complex(double)> symbol, Complex at_zero);
  /// n x n matrix symbol acting on vector fields.
  static Multiplier matrix(int dim, MatrixSymbol symbol, Eigen::MatrixXcd at_zero);

  bool is_matrix() const { return static_cast<bool>(matrix_); }
  int dim() const { return dim_; }

  Complex scalar_at(const Xi& xi) const;
  Eigen::MatrixXcd matrix_at(const Xi& xi) const;

  /// Symbol tabulated on every lattice point of `grid` (scalar multipliers).
  Eigen::ArrayXcd tabulate(const Grid& grid) const;

 private:
  ScalarSymbol scalar_;
  MatrixSymbol matrix_;
  Complex scalar_zero_{0.0};
  Eigen::MatrixXcd matrix_zero_;
  int dim_ = 0;
};

/// coeff'(xi) = m(xi) coeff(xi); Nyquist planes are zeroed afterwards.
/// Scalar multipliers act componentwise on any rank; matrix multipliers
/// require a vector field of matching dimension (std::invalid_argument).
SpectralField apply_multiplier(const SpectralField& field, const Multiplier& m);

/// Pre-tabulated scalar symbol (one value per lattice point).
SpectralField apply_multiplier(const SpectralField& field, const Eigen::ArrayXcd& table);
SpectralField apply_multiplier(const SpectralField& field, const Eigen::ArrayXd& table);

}  // namespace besov_ns
