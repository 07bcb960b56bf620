#include "besov_ns/littlewood_paley.hpp"

#include "besov_ns/differential.hpp"
#include "besov_ns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace besov_ns {

namespace {

constexpr double kBallEdge = 4.0 / 3.0;
constexpr double kRingBottom = 3.0 / 4.0;
constexpr double kRingTop = 8.0 / 3.0;

double g_exp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double ramp(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = g_exp(s);
  return a / (a + g_exp(1.0 - s));
}

}  // namespace

std::vector<int> DyadicSystem::j_values() const {
  std::vector<int> js;
  for (int j = j_min_; j <= j_max_; ++j) js.push_back(j);
  return js;
}

double DyadicSystem::chi(double r) const {
  const double flat = kRingBottom + params_.delta_flat;
  return ramp((kBallEdge - r) / (kBallEdge - flat));
}

double DyadicSystem::phi(double r) const { return chi(0.5 * r) - chi(r); }

bool DyadicSystem::truncated(int j) const { return std::ldexp(kRingTop, j) > grid_.nyquist(); }

const Eigen::ArrayXd& DyadicSystem::block_symbol(int j) const {
  if (j < j_min_ || j > j_max_)
    throw std::out_of_range("block index " + std::to_string(j) + " outside [" + std::to_string(j_min_) + ", " +
                            std::to_string(j_max_) + "]");
  return (*symbols_)[j - j_min_];
}

Eigen::ArrayXd DyadicSystem::lowpass_symbol(int j) const {
  j = std::clamp(j, j_min_, j_max_ + 1);
  const Eigen::ArrayXd& r = grid_.xi_norm();
  Eigen::ArrayXd out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) out(i) = chi(std::ldexp(r(i), -j));
  return out;
}

DyadicSystem build_dyadic_system(const Grid& grid, ProfileParams params) {
  DyadicSystem sys;
  sys.grid_ = grid;
  params.delta_flat = std::clamp(params.delta_flat, 0.0, 0.5);
  sys.params_ = params;

  int j = static_cast<int>(std::floor(std::log2(grid.xi_min() / kRingTop))) - 2;
  while (std::ldexp(kRingTop, j) <= grid.xi_min()) ++j;
  while (std::ldexp(kRingTop, j - 1) > grid.xi_min()) --j;
  sys.j_min_ = j;
  j = static_cast<int>(std::floor(std::log2(grid.xi_max() / kRingBottom))) + 2;
  while (std::ldexp(kRingBottom, j) >= grid.xi_max()) --j;
  sys.j_max_ = j;

  auto symbols = std::make_shared<std::vector<Eigen::ArrayXd>>();
  const Eigen::ArrayXd& r = grid.xi_norm();
  for (int k = sys.j_min_; k <= sys.j_max_; ++k) {
    Eigen::ArrayXd s(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) s(i) = sys.phi(std::ldexp(r(i), -k));
    symbols->push_back(std::move(s));
  }
  sys.symbols_ = std::move(symbols);
  return sys;
}

SpectralField delta_j(const DyadicSystem& sys, const SpectralField& f, int j) {
  if (f.grid() != sys.grid()) throw std::invalid_argument("grid mismatch");
  const Eigen::ArrayXd& symbol = sys.block_symbol(j);
  SpectralField out = f;
  out.coeffs().colwise() *= symbol.cast<Complex>();
  return out.zero_nyquist();
}

SpectralField s_j(const DyadicSystem& sys, const SpectralField& f, int j) {
  if (f.grid() != sys.grid()) throw std::invalid_argument("grid mismatch");
  SpectralField out = f;
  out.coeffs().colwise() *= sys.lowpass_symbol(j).cast<Complex>();
  return out.zero_nyquist();
}

SpectralField LPDecomposition::reconstruct() const {
  SpectralField sum = lowpass_floor;
  for (const auto& [j, block] : blocks) sum += block;
  return sum;
}

LPDecomposition decompose(const DyadicSystem& sys, const SpectralField& f) {
  LPDecomposition d;
  d.lowpass_floor = s_j(sys, f, sys.j_min());
  for (int j = sys.j_min(); j <= sys.j_max(); ++j) d.blocks.emplace_back(j, delta_j(sys, f, j));
  return d;
}

BernsteinReport bernstein_probe(const DyadicSystem& sys, const SpectralField& f, int j, double p, double q,
                                const Eigen::VectorXi& gamma) {
  if (p > q) throw std::invalid_argument("Bernstein probe needs p <= q");
  const int n = sys.grid().dim();
  if (gamma.size() != n || (gamma.array() < 0).any())
    throw std::invalid_argument("multi-index must have one nonnegative entry per axis");
  SpectralField d = f;
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < gamma(a); ++k) d = partial(d, a);

  BernsteinReport rep;
  rep.j = j;
  rep.p = p;
  rep.q = q;
  rep.order = gamma.sum();
  rep.lhs = lebesgue_norm(d, q);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  rep.scale = std::exp2(j * rep.order + j * n * (inv_p - inv_q)) * lebesgue_norm(f, p);
  rep.ratio = rep.scale > 0.0 ? rep.lhs / rep.scale : 0.0;
  return rep;
}

void write_profile_csv(std::ostream& out, const DyadicSystem& sys, int samples, double r_max) {
  out << "xi,chi,phi\n";
  for (int i = 0; i < samples; ++i) {
    const double r = r_max * i / std::max(1, samples - 1);
    out << r << ',' << sys.chi(r) << ',' << sys.phi(r) << '\n';
  }
}

}  // namespace besov_ns
