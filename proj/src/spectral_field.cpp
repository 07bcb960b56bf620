#include "besov_ns/spectral_field.hpp"

#include "besov_ns/fft.hpp"

#include <stdexcept>

namespace besov_ns {

int component_count(Rank rank, int dim) {
  switch (rank) {
    case Rank::scalar:
      return 1;
    case Rank::vector:
      return dim;
    case Rank::matrix:
      return dim * dim;
  }
  return 1;
}

SpectralField::SpectralField(Grid grid, Rank rank)
    : grid_(std::move(grid)),
      rank_(rank),
      coeffs_(Eigen::ArrayXXcd::Zero(grid_.num_points(), component_count(rank, grid_.dim()))) {}

SpectralField::SpectralField(Grid grid, Rank rank, Eigen::ArrayXXcd coeffs)
    : grid_(std::move(grid)), rank_(rank), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != grid_.num_points() || coeffs_.cols() != component_count(rank_, grid_.dim()))
    throw std::invalid_argument("spectral coefficients do not match grid and rank");
}

SpectralField SpectralField::extract(int c) const {
  Eigen::ArrayXXcd col = coeffs_.col(c);
  return SpectralField(grid_, Rank::scalar, std::move(col));
}

SpectralField& SpectralField::zero_nyquist() {
  const auto& mask = grid_.nyquist_mask();
  for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
    if (mask(i)) coeffs_.row(i).setZero();
  return *this;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (grid_ != other.grid_) throw std::invalid_argument("grid mismatch");
  if (rank_ != other.rank_) throw std::invalid_argument("rank mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(other);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex alpha) {
  coeffs_ *= alpha;
  return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(Complex alpha, SpectralField f) { return f *= alpha; }
SpectralField operator-(SpectralField f) { return f *= -1.0; }

PhysicalField::PhysicalField(Grid grid, Rank rank)
    : grid_(std::move(grid)),
      rank_(rank),
      values_(Eigen::ArrayXXd::Zero(grid_.num_points(), component_count(rank, grid_.dim()))) {}

PhysicalField::PhysicalField(Grid grid, Rank rank, Eigen::ArrayXXd values)
    : grid_(std::move(grid)), rank_(rank), values_(std::move(values)) {
  if (values_.rows() != grid_.num_points() || values_.cols() != component_count(rank_, grid_.dim()))
    throw std::invalid_argument("sample array size does not match grid and rank");
}

Eigen::ArrayXd PhysicalField::magnitude() const {
  if (values_.cols() == 1) return values_.col(0).abs();
  return values_.square().rowwise().sum().sqrt();
}

SpectralField forward(const PhysicalField& field) {
  const Grid& g = field.grid();
  SpectralField out(g, field.rank());
  const double scale = 1.0 / static_cast<double>(g.num_points());
  for (int c = 0; c < field.components(); ++c) {
    Eigen::ArrayXcd buf = field.component(c).cast<Complex>();
    fft::forward(buf, g.dim(), g.size());
    out.component(c) = buf * scale;
  }
  return out;
}

PhysicalField inverse(const SpectralField& field) {
  const Grid& g = field.grid();
  PhysicalField out(g, field.rank());
  for (int c = 0; c < field.components(); ++c) {
    Eigen::ArrayXcd buf = field.component(c);
    fft::backward(buf, g.dim(), g.size());
    out.component(c) = buf.real();
  }
  return out;
}

SpectralField hermitian_symmetrize(const SpectralField& field) {
  const Grid& g = field.grid();
  SpectralField out = field;
  Eigen::VectorXi m(g.dim());
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    Eigen::VectorXi mode = g.lattice_mode(i);
    for (int a = 0; a < g.dim(); ++a) m(a) = mode(a) == -g.size() / 2 ? mode(a) : -mode(a);
    const Eigen::Index partner = g.flat_index(m);
    for (int c = 0; c < field.components(); ++c)
      out.coeffs()(i, c) = 0.5 * (field.coeffs()(i, c) + std::conj(field.coeffs()(partner, c)));
  }
  return out;
}

}  // namespace besov_ns
