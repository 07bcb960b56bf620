#include "besov_ns/oscillation.hpp"

#include "besov_ns/besov.hpp"
#include "besov_ns/differential.hpp"
#include "besov_ns/parallel.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace besov_ns {

std::string to_string(OscillationKind kind) {
  switch (kind) {
    case OscillationKind::scalar_modulated: return "scalar_modulated";
    case OscillationKind::planar_shear: return "planar_shear";
    case OscillationKind::shear_velocity: return "shear_velocity";
  }
  return "unknown";
}

OscillationKind oscillation_kind_from_string(const std::string& name) {
  for (auto k : {OscillationKind::scalar_modulated, OscillationKind::planar_shear, OscillationKind::shear_velocity})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown oscillation kind '" + name + "'");
}

SpectralField envelope(const Grid& grid) {
  const double unit = grid.wavenumber_unit();
  SpectralField f = forward(sample(grid, [unit](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += std::pow(std::sin(0.5 * unit * x(i)), 2);
    return std::exp(-4.0 * s);
  }));
  f.coeffs()(0, 0) = 0.0;
  return f.zero_nyquist();
}

namespace {

// Samples of a component times a carrier depending on one coordinate.
Eigen::ArrayXd modulate(const Grid& g, const SpectralField& f, int axis, double k, bool cosine) {
  const Eigen::ArrayXd base = inverse(f).values().col(0);
  const Eigen::ArrayXd arg = k * g.x(axis);
  return cosine ? Eigen::ArrayXd(base * arg.cos()) : Eigen::ArrayXd(base * arg.sin());
}

}  // namespace

OscillatingField make_oscillating(const Grid& grid, OscillationKind kind, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int n = grid.dim();
  if (kind == OscillationKind::planar_shear && n != 2) throw std::invalid_argument("planar_shear needs n = 2");
  if (kind == OscillationKind::shear_velocity && n != 3) throw std::invalid_argument("shear_velocity needs n = 3");
  const double unit = grid.wavenumber_unit();
  if (1.0 / epsilon > 0.5 * grid.nyquist()) throw std::invalid_argument("under-resolved oscillation");

  OscillatingField out;
  out.kind = kind;
  out.mode = static_cast<int>(std::lround(1.0 / (epsilon * unit)));
  const double k = out.mode * unit;
  out.epsilon = out.mode == 0 ? std::numeric_limits<double>::infinity() : 1.0 / k;

  const SpectralField phi = envelope(grid);
  switch (kind) {
    case OscillationKind::scalar_modulated: {
      out.real = forward(PhysicalField(grid, Rank::scalar, modulate(grid, phi, 0, k, true))).zero_nyquist();
      out.imag = forward(PhysicalField(grid, Rank::scalar, modulate(grid, phi, 0, k, false))).zero_nyquist();
      break;
    }
    case OscillationKind::planar_shear: {
      Eigen::ArrayXXd v = Eigen::ArrayXXd::Zero(grid.num_points(), 2);
      v.col(1) = modulate(grid, phi, 0, k, false);
      out.real = forward(PhysicalField(grid, Rank::vector, v)).zero_nyquist();
      break;
    }
    case OscillationKind::shear_velocity: {
      Eigen::ArrayXXd v = Eigen::ArrayXXd::Zero(grid.num_points(), 3);
      v.col(0) = -modulate(grid, partial(phi, 1), 2, k, false);
      v.col(1) = modulate(grid, partial(phi, 0), 2, k, false);
      out.real = forward(PhysicalField(grid, Rank::vector, v)).zero_nyquist();
      break;
    }
  }
  return out;
}

BlockNorms OscillatingField::blocks(const DyadicSystem& sys, double p) const {
  if (kind != OscillationKind::scalar_modulated) return block_norms(sys, real, p);
  const Grid& g = sys.grid();
  const double cell = std::pow(g.spacing(), g.dim());
  BlockNorms bn;
  bn.p = p;
  bn.j = sys.j_values();
  bn.l2.resize(sys.num_blocks());
  bn.lp.resize(sys.num_blocks());
  for (int b = 0; b < sys.num_blocks(); ++b) {
    const Eigen::ArrayXd re = inverse(delta_j(sys, real, bn.j[b])).values().col(0);
    const Eigen::ArrayXd im = inverse(delta_j(sys, imag, bn.j[b])).values().col(0);
    const Eigen::ArrayXd m = (re.square() + im.square()).sqrt();
    const double top = m.maxCoeff();
    bn.l2(b) = std::sqrt(cell * m.square().sum());
    bn.lp(b) = top == 0.0 ? 0.0 : top * std::pow(cell * (m / top).pow(p).sum(), 1.0 / p);
  }
  return bn;
}

OscillationReport oscillation_norm_sweep(const Grid& grid, OscillationKind kind, double p,
                                         const std::vector<double>& eps_list, double R0) {
  const int n = grid.dim();
  const DyadicSystem sys = build_dyadic_system(grid);
  const HybridParams hp{0.5 * n - 1.0, n / p - 1.0, p, R0};
  hp.validate();
  OscillationReport rep;
  rep.kind = kind;
  rep.p = p;
  rep.R0 = R0;
  rep.expected_slope = 1.0 - n / p;
  rep.epsilon.resize(eps_list.size());
  rep.norm.resize(eps_list.size());
  // Validate up front so errors are raised on the calling thread.
  std::vector<OscillatingField> data;
  for (double eps : eps_list) data.push_back(make_oscillating(grid, kind, eps));
  parallel_for(eps_list.size(), [&](std::size_t i) {
    rep.epsilon[i] = data[i].epsilon;
    rep.norm[i] = hybrid_norm(data[i].blocks(sys, p), hp);
  });
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    xs.push_back(std::log(rep.epsilon[i]));
    ys.push_back(std::log(rep.norm[i]));
  }
  rep.fit = fit_rate(xs, ys);
  return rep;
}

OscillationReport oscillation_scaling_experiment(const Grid& grid, OscillationKind kind, double p,
                                                 const std::vector<double>& eps_list, double R0) {
  if (!(p > grid.dim())) throw std::invalid_argument("exponent nonpositive, regime requires p > n");
  return oscillation_norm_sweep(grid, kind, p, eps_list, R0);
}

std::vector<double> dyadic_epsilons(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(std::exp2(-k));
  return out;
}

void write_oscillation_csv(std::ostream& out, const OscillationReport& report) {
  out << "epsilon,norm,log_epsilon,log_norm\n";
  out.precision(12);
  for (std::size_t i = 0; i < report.epsilon.size(); ++i)
    out << report.epsilon[i] << ',' << report.norm[i] << ',' << std::log(report.epsilon[i]) << ','
        << std::log(report.norm[i]) << '\n';
}

}  // namespace besov_ns
