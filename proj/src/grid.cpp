#include "besov_ns/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace besov_ns {

namespace detail {

struct Lattice {
  int n = 0;
  int N = 0;
  double L = 0.0;
  Eigen::Index points = 0;
  std::vector<Eigen::ArrayXd> xi;
  std::vector<Eigen::ArrayXd> x;
  Eigen::ArrayXd xi_norm;
  Eigen::ArrayXi mode_norm2;
  Eigen::Array<bool, Eigen::Dynamic, 1> nyquist;
};

}  // namespace detail

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Grid make_grid(int n, int N, double L) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("grid dimension must be 1, 2 or 3 (got " + std::to_string(n) + ")");
  if (!is_power_of_two(N))
    throw std::invalid_argument("N must be a power of two (got " + std::to_string(N) + ")");
  if (N < 8) throw std::invalid_argument("N must be at least 8 (got " + std::to_string(N) + ")");
  if (!(L > 0.0)) throw std::invalid_argument("period L must be positive");

  auto lat = std::make_shared<detail::Lattice>();
  lat->n = n;
  lat->N = N;
  lat->L = L;
  Eigen::Index points = 1;
  for (int a = 0; a < n; ++a) points *= N;
  lat->points = points;

  const double unit = 2.0 * std::numbers::pi / L;
  const double h = L / N;
  lat->xi.assign(n, Eigen::ArrayXd::Zero(points));
  lat->x.assign(n, Eigen::ArrayXd::Zero(points));
  lat->mode_norm2 = Eigen::ArrayXi::Zero(points);
  lat->nyquist = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(points, false);

  for (Eigen::Index flat = 0; flat < points; ++flat) {
    Eigen::Index rest = flat;
    for (int a = n - 1; a >= 0; --a) {
      const int k = static_cast<int>(rest % N);
      rest /= N;
      const int m = k < N / 2 ? k : k - N;
      lat->xi[a](flat) = unit * m;
      lat->x[a](flat) = h * k;
      lat->mode_norm2(flat) += m * m;
      if (m == -N / 2) lat->nyquist(flat) = true;
    }
  }
  lat->xi_norm = Eigen::ArrayXd::Zero(points);
  for (int a = 0; a < n; ++a) lat->xi_norm += lat->xi[a].square();
  lat->xi_norm = lat->xi_norm.sqrt();
  return Grid(std::move(lat));
}

int Grid::dim() const { return lat_->n; }
int Grid::size() const { return lat_->N; }
double Grid::period() const { return lat_->L; }
Eigen::Index Grid::num_points() const { return lat_->points; }

double Grid::xi_max() const { return std::sqrt(static_cast<double>(dim())) * nyquist(); }

Eigen::VectorXi Grid::lattice_mode(Eigen::Index flat) const {
  Eigen::VectorXi m(dim());
  Eigen::Index rest = flat;
  for (int a = dim() - 1; a >= 0; --a) {
    m(a) = mode_of_index(static_cast<int>(rest % size()));
    rest /= size();
  }
  return m;
}

Eigen::Index Grid::flat_index(const Eigen::Ref<const Eigen::VectorXi>& mode) const {
  Eigen::Index flat = 0;
  for (int a = 0; a < dim(); ++a) {
    const int m = mode(a);
    if (m < -size() / 2 || m >= size() / 2)
      throw std::out_of_range("lattice mode outside [-N/2, N/2)");
    flat = flat * size() + index_of_mode(m);
  }
  return flat;
}

Eigen::VectorXd Grid::frequency(Eigen::Index flat) const {
  Eigen::VectorXd xi_vec(dim());
  for (int a = 0; a < dim(); ++a) xi_vec(a) = lat_->xi[a](flat);
  return xi_vec;
}

Eigen::VectorXd Grid::position(Eigen::Index flat) const {
  Eigen::VectorXd pos(dim());
  for (int a = 0; a < dim(); ++a) pos(a) = lat_->x[a](flat);
  return pos;
}

const Eigen::ArrayXd& Grid::xi(int axis) const { return lat_->xi.at(axis); }
const Eigen::ArrayXd& Grid::xi_norm() const { return lat_->xi_norm; }
const Eigen::ArrayXi& Grid::mode_norm2() const { return lat_->mode_norm2; }
const Eigen::Array<bool, Eigen::Dynamic, 1>& Grid::nyquist_mask() const { return lat_->nyquist; }
const Eigen::ArrayXd& Grid::x(int axis) const { return lat_->x.at(axis); }

bool Grid::operator==(const Grid& other) const {
  if (lat_ == other.lat_) return true;
  if (!lat_ || !other.lat_) return false;
  return lat_->n == other.lat_->n && lat_->N == other.lat_->N && lat_->L == other.lat_->L;
}

}  // namespace besov_ns
