#include "besov_ns/products.hpp"

#include "besov_ns/differential.hpp"
#include "besov_ns/fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace besov_ns {

namespace {

using IndexMap = std::vector<Eigen::Index>;

// Flat index on the padded lattice for every point of the original lattice,
// or -1 on the Nyquist planes.
std::shared_ptr<const IndexMap> padding_map(const Grid& g, int M) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const IndexMap>> cache;
  const auto key = std::make_tuple(g.dim(), g.size(), M);
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto map = std::make_shared<IndexMap>(g.num_points());
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const Eigen::VectorXi m = g.lattice_mode(i);
    Eigen::Index flat = 0;
    bool nyquist = false;
    for (int a = 0; a < g.dim(); ++a) {
      if (m(a) == -g.size() / 2) nyquist = true;
      flat = flat * M + (m(a) >= 0 ? m(a) : m(a) + M);
    }
    (*map)[i] = nyquist ? -1 : flat;
  }
  cache.emplace(key, map);
  return map;
}

Eigen::Index cube(int M, int dim) {
  Eigen::Index total = 1;
  for (int a = 0; a < dim; ++a) total *= M;
  return total;
}

}  // namespace

int padded_size(const Grid& grid, bool dealias) { return dealias ? 3 * grid.size() / 2 : grid.size(); }

PaddedSamples to_padded(const SpectralField& f, bool dealias) {
  const Grid& g = f.grid();
  const int M = padded_size(g, dealias);
  const auto map = padding_map(g, M);
  PaddedSamples out{g, f.rank(), M, Eigen::ArrayXXd(cube(M, g.dim()), f.components())};
  Eigen::ArrayXcd buf(out.values.rows());
  for (int c = 0; c < f.components(); ++c) {
    buf.setZero();
    for (Eigen::Index i = 0; i < g.num_points(); ++i)
      if ((*map)[i] >= 0) buf((*map)[i]) = f.coeffs()(i, c);
    fft::backward(buf, g.dim(), M);
    out.values.col(c) = buf.real();
  }
  return out;
}

SpectralField from_padded(const PaddedSamples& samples) {
  const Grid& g = samples.grid;
  const int M = samples.padded_size;
  const auto map = padding_map(g, M);
  SpectralField out(g, samples.rank);
  if (samples.values.cols() != out.components())
    throw std::invalid_argument("padded samples do not match rank");
  const double scale = 1.0 / static_cast<double>(samples.values.rows());
  Eigen::ArrayXcd buf(samples.values.rows());
  for (int c = 0; c < out.components(); ++c) {
    buf = samples.values.col(c).cast<Complex>();
    fft::forward(buf, g.dim(), M);
    for (Eigen::Index i = 0; i < g.num_points(); ++i)
      out.coeffs()(i, c) = (*map)[i] >= 0 ? buf((*map)[i]) * scale : Complex(0.0);
  }
  return out;
}

SpectralField multiply(const SpectralField& s, const SpectralField& f, bool dealias) {
  if (s.rank() != Rank::scalar) throw std::invalid_argument("multiply: first factor must be scalar");
  if (s.grid() != f.grid()) throw std::invalid_argument("grid mismatch");
  const PaddedSamples ps = to_padded(s, dealias);
  PaddedSamples pf = to_padded(f, dealias);
  pf.values.colwise() *= ps.values.col(0);
  return from_padded(pf);
}

SpectralField advect(const SpectralField& v, const SpectralField& f, bool dealias) {
  const Grid& g = v.grid();
  if (v.rank() != Rank::vector) throw std::invalid_argument("advect: transporting field must be a vector");
  if (f.rank() == Rank::matrix) throw std::invalid_argument("advect: matrix fields are not supported");
  if (g != f.grid()) throw std::invalid_argument("grid mismatch");
  const int n = g.dim();
  const PaddedSamples pv = to_padded(v, dealias);
  PaddedSamples acc{g, f.rank(), pv.padded_size, Eigen::ArrayXXd::Zero(pv.values.rows(), f.components())};
  for (int j = 0; j < n; ++j) {
    const PaddedSamples dj = to_padded(partial(f, j), dealias);
    acc.values += dj.values.colwise() * pv.values.col(j);
  }
  return from_padded(acc);
}

}  // namespace besov_ns
