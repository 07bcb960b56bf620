#pragma once

#include "besov_ns/grid.hpp"

#include <Eigen/Dense>

namespace besov_ns {

enum class Rank { scalar = 0, vector = 1, matrix = 2 };

/// Number of components of a field of the given rank in `dim` dimensions.
int component_count(Rank rank, int dim);

/// Fourier coefficients of a real field on a periodic grid.
///
/// Convention: c(m) = N^{-n} sum_x f(x) e^{-i xi.x}, so f(x) = sum_m c(m)
/// e^{i xi.x} and derivatives act as i xi. Coefficients are stored as a
/// (num_points x components) array; a matrix field stores component (i, j)
/// at column i*n + j.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(Grid grid, Rank rank);
  SpectralField(Grid grid, Rank rank, Eigen::ArrayXXcd coeffs);

  static SpectralField zeros_like(const SpectralField& other) {
    return SpectralField(other.grid_, other.rank_);
  }

  const Grid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return static_cast<int>(coeffs_.cols()); }

  Eigen::ArrayXXcd& coeffs() { return coeffs_; }
  const Eigen::ArrayXXcd& coeffs() const { return coeffs_; }

  auto component(int c) { return coeffs_.col(c); }
  auto component(int c) const { return coeffs_.col(c); }
  auto component(int i, int j) { return coeffs_.col(i * grid_.dim() + j); }
  auto component(int i, int j) const { return coeffs_.col(i * grid_.dim() + j); }

  /// Zero-mode (spatial mean) of component c.
  Complex mean(int c = 0) const { return coeffs_(0, c); }

  /// Scalar field holding component c of this field.
  SpectralField extract(int c) const;

  /// Zero every coefficient on the Nyquist planes m_a = -N/2.
  SpectralField& zero_nyquist();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex alpha);

 private:
  void check_compatible(const SpectralField& other) const;

  Grid grid_;
  Rank rank_ = Rank::scalar;
  Eigen::ArrayXXcd coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(Complex alpha, SpectralField f);
SpectralField operator-(SpectralField f);

/// Samples of a real field at the grid points, laid out like SpectralField.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(Grid grid, Rank rank);
  PhysicalField(Grid grid, Rank rank, Eigen::ArrayXXd values);

  const Grid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return static_cast<int>(values_.cols()); }

  Eigen::ArrayXXd& values() { return values_; }
  const Eigen::ArrayXXd& values() const { return values_; }
  auto component(int c) { return values_.col(c); }
  auto component(int c) const { return values_.col(c); }

  /// Pointwise Euclidean (Frobenius for matrices) magnitude.
  Eigen::ArrayXd magnitude() const;

 private:
  Grid grid_;
  Rank rank_ = Rank::scalar;
  Eigen::ArrayXXd values_;
};

/// Physical samples to Fourier coefficients. The result is exactly
/// Hermitian-symmetric up to roundoff; Nyquist content is kept.
SpectralField forward(const PhysicalField& field);

/// Fourier coefficients to physical samples (real part of the synthesis).
PhysicalField inverse(const SpectralField& field);

/// Replace c(m) and c(-m) by their Hermitian average so the represented
/// field is exactly real.
SpectralField hermitian_symmetrize(const SpectralField& field);

/// Convenience: sample a scalar function of position on the grid.
template <typename Fn>
PhysicalField sample(const Grid& grid, Fn&& fn) {
  PhysicalField out(grid, Rank::scalar);
  for (Eigen::Index i = 0; i < grid.num_points(); ++i) out.values()(i, 0) = fn(grid.position(i));
  return out;
}

}  // namespace besov_ns
