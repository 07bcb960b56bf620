#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <numbers>

namespace besov_ns {

using Complex = std::complex<double>;

namespace detail {
struct Lattice;
}

/// Periodic cubic grid [0, L)^n with N points per axis.
///
/// Lattice points are stored in FFT order: along each axis the storage index
/// k in [0, N) maps to the integer mode m = k for k < N/2 and m = k - N
/// otherwise, so m ranges over [-N/2, N/2). The frequency of mode m is
/// xi = (2 pi / L) m. Flat indices are row-major with axis 0 outermost.
class Grid {
 public:
  Grid() = default;

  int dim() const;
  int size() const;
  double period() const;
  Eigen::Index num_points() const;

  double spacing() const { return period() / size(); }
  double wavenumber_unit() const { return 2.0 * std::numbers::pi / period(); }
  /// Largest resolved frequency magnitude along one axis, (N/2) * 2pi/L.
  double nyquist() const { return 0.5 * size() * wavenumber_unit(); }
  /// Smallest nonzero lattice frequency magnitude.
  double xi_min() const { return wavenumber_unit(); }
  /// Largest lattice frequency magnitude (a corner of the cube).
  double xi_max() const;

  int mode_of_index(int k) const { return k < size() / 2 ? k : k - size(); }
  int index_of_mode(int m) const { return m >= 0 ? m : m + size(); }

  Eigen::VectorXi lattice_mode(Eigen::Index flat) const;
  Eigen::Index flat_index(const Eigen::Ref<const Eigen::VectorXi>& mode) const;
  Eigen::VectorXd frequency(Eigen::Index flat) const;
  /// Physical position of sample `flat`.
  Eigen::VectorXd position(Eigen::Index flat) const;

  /// xi_axis per lattice point.
  const Eigen::ArrayXd& xi(int axis) const;
  /// |xi| per lattice point.
  const Eigen::ArrayXd& xi_norm() const;
  /// |m|^2 per lattice point (integer radial key).
  const Eigen::ArrayXi& mode_norm2() const;
  /// 1 where any component of m equals -N/2, else 0.
  const Eigen::Array<bool, Eigen::Dynamic, 1>& nyquist_mask() const;
  /// Physical coordinate x_axis per sample.
  const Eigen::ArrayXd& x(int axis) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  friend Grid make_grid(int n, int N, double L);
  explicit Grid(std::shared_ptr<const detail::Lattice> lat) : lat_(std::move(lat)) {}
  std::shared_ptr<const detail::Lattice> lat_;
};

/// Throws std::invalid_argument unless n in {1,2,3}, N a power of two >= 8
/// and L > 0.
Grid make_grid(int n, int N, double L = 2.0 * std::numbers::pi);

}  // namespace besov_ns
