#include "besov_ns/differential.hpp"

#include <cmath>
#include <stdexcept>

namespace besov_ns {

namespace {

const Complex kI{0.0, 1.0};

Eigen::ArrayXcd derivative_symbol(const Grid& g, int axis) { return kI * g.xi(axis).cast<Complex>(); }

}  // namespace

SpectralField partial(const SpectralField& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw std::invalid_argument("derivative axis out of range");
  SpectralField out = f;
  out.coeffs().colwise() *= derivative_symbol(f.grid(), axis);
  return out.zero_nyquist();
}

SpectralField grad(const SpectralField& f) {
  if (f.rank() != Rank::scalar) throw std::invalid_argument("rank mismatch: grad needs a scalar field");
  const Grid& g = f.grid();
  SpectralField out(g, Rank::vector);
  for (int a = 0; a < g.dim(); ++a) out.component(a) = f.component(0) * derivative_symbol(g, a);
  return out.zero_nyquist();
}

SpectralField div(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.dim();
  if (f.rank() == Rank::vector) {
    SpectralField out(g, Rank::scalar);
    for (int a = 0; a < n; ++a) out.component(0) += f.component(a) * derivative_symbol(g, a);
    return out.zero_nyquist();
  }
  if (f.rank() == Rank::matrix) {
    SpectralField out(g, Rank::vector);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.component(i) += f.component(i, j) * derivative_symbol(g, j);
    return out.zero_nyquist();
  }
  throw std::invalid_argument("rank mismatch: div needs a vector or matrix field");
}

SpectralField curl(const SpectralField& v) {
  if (v.rank() != Rank::vector) throw std::invalid_argument("rank mismatch: curl needs a vector field");
  const Grid& g = v.grid();
  const int n = g.dim();
  SpectralField out(g, Rank::matrix);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::ArrayXcd c = v.component(i) * derivative_symbol(g, j) - v.component(j) * derivative_symbol(g, i);
      out.component(i, j) = c;
      out.component(j, i) = -c;
    }
  return out.zero_nyquist();
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = f;
  out.coeffs().colwise() *= (-f.grid().xi_norm().square()).cast<Complex>();
  return out.zero_nyquist();
}

SpectralField lambda(const SpectralField& f, double s) {
  const Eigen::ArrayXd& r = f.grid().xi_norm();
  Eigen::ArrayXd symbol(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i)
    symbol(i) = r(i) == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r(i), s);
  SpectralField out = f;
  out.coeffs().colwise() *= symbol.cast<Complex>();
  return out.zero_nyquist();
}

SpectralField differential(const SpectralField& f, DiffOp op, double s) {
  switch (op) {
    case DiffOp::grad:
      return grad(f);
    case DiffOp::div:
      return div(f);
    case DiffOp::curl:
      return curl(f);
    case DiffOp::laplacian:
      return laplacian(f);
    case DiffOp::lambda:
      return lambda(f, s);
  }
  throw std::invalid_argument("unknown differential operator");
}

}  // namespace besov_ns
