#include "besov_ns/paraproduct.hpp"

#include "besov_ns/differential.hpp"
#include "besov_ns/products.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace besov_ns {

namespace {

// Padded physical samples of the mean and of every block.
struct PaddedBlocks {
  PaddedSamples mean;
  std::vector<Eigen::ArrayXd> blocks;
};

PaddedBlocks padded_blocks(const DyadicSystem& sys, const SpectralField& f) {
  PaddedBlocks out;
  out.mean = to_padded(s_j(sys, f, sys.j_min()));
  for (int j : sys.j_values()) out.blocks.push_back(to_padded(delta_j(sys, f, j)).values.col(0));
  return out;
}

}  // namespace

BonySplit bony_split(const DyadicSystem& sys, const SpectralField& f, const SpectralField& g) {
  if (f.rank() != Rank::scalar || g.rank() != Rank::scalar)
    throw std::invalid_argument("bony_split needs scalar fields");
  if (f.grid() != sys.grid() || g.grid() != sys.grid()) throw std::invalid_argument("grid mismatch");
  const PaddedBlocks pf = padded_blocks(sys, f);
  const PaddedBlocks pg = padded_blocks(sys, g);
  const int B = sys.num_blocks();

  PaddedSamples tfg = pf.mean, tgf = pf.mean, r = pf.mean;
  tfg.values.setZero();
  tgf.values.setZero();
  r.values = pf.mean.values * pg.mean.values;

  // S_{j-1} = mean + sum of blocks up to j - 2
  Eigen::ArrayXd low_f = pf.mean.values.col(0);
  Eigen::ArrayXd low_g = pg.mean.values.col(0);
  for (int k = 0; k < B; ++k) {
    if (k >= 2) {
      low_f += pf.blocks[k - 2];
      low_g += pg.blocks[k - 2];
    }
    tfg.values.col(0) += low_f * pg.blocks[k];
    tgf.values.col(0) += low_g * pf.blocks[k];
    Eigen::ArrayXd near = pg.blocks[k];
    if (k > 0) near += pg.blocks[k - 1];
    if (k + 1 < B) near += pg.blocks[k + 1];
    r.values.col(0) += pf.blocks[k] * near;
  }
  return {from_padded(tfg), from_padded(tgf), from_padded(r)};
}

SpectralField commutator_field(const DyadicSystem& sys, const SpectralField& v, const SpectralField& f, int j) {
  if (f.rank() != Rank::scalar) throw std::invalid_argument("commutator needs a scalar f");
  return advect(v, delta_j(sys, f, j)) - delta_j(sys, advect(v, f), j);
}

SpectralField compose_pointwise(const SpectralField& f, const std::function<double(double)>& F,
                                bool needs_positive_density) {
  if (f.rank() != Rank::scalar) throw std::invalid_argument("composition needs a scalar field");
  PhysicalField x = inverse(f);
  if (needs_positive_density && (1.0 + x.values().col(0)).minCoeff() <= kVacuumFloor)
    throw std::domain_error("vacuum");
  x.values() = x.values().unaryExpr(F);
  return forward(x).zero_nyquist();
}

SpectralField compose_K(const SpectralField& a, double gamma) {
  return compose_pointwise(a, [gamma](double x) { return std::pow(1.0 + x, gamma - 2.0) - 1.0; }, true);
}

SpectralField compose_L(const SpectralField& a) {
  return compose_pointwise(a, [](double x) { return x / (1.0 + x); }, true);
}

}  // namespace besov_ns
