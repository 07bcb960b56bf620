#include "besov_ns/multiplier.hpp"

#include <stdexcept>

namespace besov_ns {

Multiplier Multiplier::scalar(ScalarSymbol symbol, Complex at_zero) {
  Multiplier m;
  m.scalar_ = std::move(symbol);
  m.scalar_zero_ = at_zero;
  return m;
}

Multiplier Multiplier::radial(std::function<Complex(double)> symbol, Complex at_zero) {
  return scalar([f = std::move(symbol)](const Xi& xi) { return f(xi.norm()); }, at_zero);
}

Multiplier Multiplier::matrix(int dim, MatrixSymbol symbol, Eigen::MatrixXcd at_zero) {
  if (at_zero.rows() != dim || at_zero.cols() != dim)
    throw std::invalid_argument("matrix multiplier zero-mode value has wrong shape");
  Multiplier m;
  m.matrix_ = std::move(symbol);
  m.matrix_zero_ = std::move(at_zero);
  m.dim_ = dim;
  return m;
}

Complex Multiplier::scalar_at(const Xi& xi) const {
  if (xi.squaredNorm() == 0.0) return scalar_zero_;
  return scalar_(xi);
}

Eigen::MatrixXcd Multiplier::matrix_at(const Xi& xi) const {
  if (xi.squaredNorm() == 0.0) return matrix_zero_;
  return matrix_(xi);
}

Eigen::ArrayXcd Multiplier::tabulate(const Grid& grid) const {
  if (is_matrix()) throw std::invalid_argument("cannot tabulate a matrix multiplier as a scalar");
  Eigen::ArrayXcd table(grid.num_points());
  for (Eigen::Index i = 0; i < grid.num_points(); ++i) table(i) = scalar_at(grid.frequency(i));
  return table;
}

SpectralField apply_multiplier(const SpectralField& field, const Multiplier& m) {
  if (!m.is_matrix()) return apply_multiplier(field, m.tabulate(field.grid()));

  const Grid& g = field.grid();
  if (field.rank() != Rank::vector || m.dim() != g.dim())
    throw std::invalid_argument("rank mismatch: matrix multiplier needs a vector field");
  SpectralField out(g, Rank::vector);
  Eigen::VectorXcd v(g.dim());
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    for (int c = 0; c < g.dim(); ++c) v(c) = field.coeffs()(i, c);
    const Eigen::VectorXcd w = m.matrix_at(g.frequency(i)) * v;
    for (int c = 0; c < g.dim(); ++c) out.coeffs()(i, c) = w(c);
  }
  return out.zero_nyquist();
}

SpectralField apply_multiplier(const SpectralField& field, const Eigen::ArrayXcd& table) {
  if (table.size() != field.grid().num_points())
    throw std::invalid_argument("multiplier table does not match grid");
  SpectralField out = field;
  out.coeffs().colwise() *= table;
  return out.zero_nyquist();
}

SpectralField apply_multiplier(const SpectralField& field, const Eigen::ArrayXd& table) {
  if (table.size() != field.grid().num_points())
    throw std::invalid_argument("multiplier table does not match grid");
  SpectralField out = field;
  out.coeffs().colwise() *= table.cast<Complex>();
  return out.zero_nyquist();
}

}  // namespace besov_ns
