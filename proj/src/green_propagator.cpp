#include "besov_ns/green_propagator.hpp"

#include "besov_ns/multiplier.hpp"
#include "besov_ns/norms.hpp"

#include <numbers>
#include <ostream>
#include <random>
#include <unordered_map>

namespace besov_ns {

std::pair<SpectralField, SpectralField> propagate(const SpectralField& a, const SpectralField& d, double t,
                                                  double nu_bar) {
  if (a.grid() != d.grid()) throw std::invalid_argument("grid mismatch");
  if (a.rank() != Rank::scalar || d.rank() != Rank::scalar)
    throw std::invalid_argument("propagate needs scalar fields");
  const Grid& g = a.grid();
  std::unordered_map<int, Eigen::Matrix2d> table;
  SpectralField a1(g, Rank::scalar), d1(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const int key = g.mode_norm2()(i);
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, ghat(g.xi_norm()(i), t, nu_bar)).first;
    const Eigen::Matrix2d& G = it->second;
    a1.coeffs()(i, 0) = G(0, 0) * a.coeffs()(i, 0) + G(0, 1) * d.coeffs()(i, 0);
    d1.coeffs()(i, 0) = G(1, 0) * a.coeffs()(i, 0) + G(1, 1) * d.coeffs()(i, 0);
  }
  a1.zero_nyquist();
  d1.zero_nyquist();
  return {a1, d1};
}

SpectralField heat_semigroup(const SpectralField& f, double nu, double t) {
  if (t < 0) throw std::invalid_argument("heat semigroup: t must be nonnegative");
  if (!(nu > 0)) throw std::invalid_argument("heat semigroup: nu must be positive");
  const Eigen::ArrayXd symbol = (-nu * t * f.grid().xi_norm().square()).exp();
  return apply_multiplier(f, symbol);
}

SpectralField lame_semigroup(const SpectralField& v, double mu_bar, double lambda_bar, double t) {
  if (!(mu_bar > 0) || !(lambda_bar + 2 * mu_bar > 0))
    throw std::invalid_argument("non-elliptic Lamé coefficients");
  if (t < 0) throw std::invalid_argument("Lamé semigroup: t must be nonnegative");
  if (v.rank() != Rank::vector) throw std::invalid_argument("rank mismatch: Lamé flow acts on vector fields");
  const Grid& g = v.grid();
  const int n = g.dim();
  const double nu = lambda_bar + 2 * mu_bar;
  SpectralField out(g, Rank::vector);
  Eigen::VectorXcd w(n);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const double r2 = g.xi_norm()(i) * g.xi_norm()(i);
    if (r2 == 0) {
      out.coeffs().row(i) = v.coeffs().row(i);
      continue;
    }
    const Eigen::VectorXd xi = g.frequency(i);
    for (int c = 0; c < n; ++c) w(c) = v.coeffs()(i, c);
    const Complex along = xi.cast<Complex>().dot(w) / r2;  // (xi . w) / |xi|^2, xi real
    const Eigen::VectorXcd parallel = along * xi.cast<Complex>();
    const Eigen::VectorXcd result = std::exp(-nu * r2 * t) * parallel + std::exp(-mu_bar * r2 * t) * (w - parallel);
    for (int c = 0; c < n; ++c) out.coeffs()(i, c) = result(c);
  }
  return out.zero_nyquist();
}

const char* to_string(DecayRegime regime) {
  switch (regime) {
    case DecayRegime::low_L2:
      return "low_L2";
    case DecayRegime::low_Lp:
      return "low_Lp";
    case DecayRegime::high_G1:
      return "high_G1";
    case DecayRegime::high_G2:
      return "high_G2";
  }
  return "unknown";
}

DecayRegime decay_regime_from_string(const std::string& name) {
  for (DecayRegime r : {DecayRegime::low_L2, DecayRegime::low_Lp, DecayRegime::high_G1, DecayRegime::high_G2})
    if (name == to_string(r)) return r;
  throw std::invalid_argument("unknown decay regime '" + name + "'");
}

double oscillation_period(double r, double nu_bar) {
  const double disc = 4 - nu_bar * nu_bar * r * r;
  if (!(r > 0) || !(disc > 0)) throw std::invalid_argument("oscillation period needs 0 < r < 2 / nu");
  return 2 * std::numbers::pi / (r * std::sqrt(disc) / 2);
}

namespace {

SpectralField ring_data(const DyadicSystem& sys, int j, const DecayProbeParams& pp) {
  const Grid& g = sys.grid();
  if (pp.single_mode) {
    const double k = std::ldexp(1.0, j) / g.wavenumber_unit();
    if (std::abs(k - std::round(k)) > 1e-12 || k >= g.size() / 2)
      throw std::invalid_argument("no lattice mode at |xi| = 2^j");
    SpectralField f(g, Rank::scalar);
    Eigen::VectorXi m = Eigen::VectorXi::Zero(g.dim());
    m(0) = static_cast<int>(std::lround(k));
    f.coeffs()(g.flat_index(m), 0) = 0.5;
    f.coeffs()(g.flat_index(-m), 0) = 0.5;
    return f;
  }
  const int base = std::min(j, pp.reference_ring);
  std::mt19937_64 rng(pp.seed);
  std::normal_distribution<double> normal;
  PhysicalField noise(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) noise.values()(i, 0) = normal(rng);
  const SpectralField ring = delta_j(sys, forward(noise), base);
  if (base == j) return ring;
  const int factor = 1 << (j - base);
  SpectralField out(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    if (ring.coeffs()(i, 0) == Complex(0.0)) continue;
    const Eigen::VectorXi m = factor * g.lattice_mode(i);
    if ((m.array().abs() >= g.size() / 2).any()) throw std::invalid_argument("dilated ring exceeds the grid");
    out.coeffs()(g.flat_index(m), 0) = ring.coeffs()(i, 0);
  }
  return out;
}

double pair_norm(const SpectralField& a, const SpectralField& d, double p) {
  PhysicalField pair(a.grid(), Rank::vector);
  pair.values().resize(a.grid().num_points(), 2);
  pair.values().col(0) = inverse(a).values().col(0);
  pair.values().col(1) = inverse(d).values().col(0);
  return lebesgue_norm(pair, p);
}

}  // namespace

DecayReport decay_probe(const DyadicSystem& sys, DecayRegime regime, int j, const std::vector<double>& t_grid,
                        const DecayProbeParams& pp) {
  const Grid& g = sys.grid();
  const double R0 = pp.R0 > 0 ? pp.R0 : 2 / pp.nu_bar;
  const bool low = regime == DecayRegime::low_L2 || regime == DecayRegime::low_Lp;
  if (low && std::exp2(j) > R0)
    throw std::invalid_argument("ring " + std::to_string(j) + " is above R0 for a low-frequency regime");
  if (!low && std::exp2(j) <= R0)
    throw std::invalid_argument("ring " + std::to_string(j) + " is not above R0 for a high-frequency regime");

  const SpectralField u = ring_data(sys, j, pp);
  if (!low) {
    const double threshold = expansion_threshold(pp.nu_bar, R0);
    for (Eigen::Index i = 0; i < g.num_points(); ++i)
      if (u.coeffs()(i, 0) != Complex(0.0) && g.xi_norm()(i) < threshold)
        throw std::invalid_argument("ring " + std::to_string(j) + " reaches below the high-frequency threshold");
  }

  DecayReport rep;
  rep.regime = regime;
  rep.j = j;
  rep.t = t_grid;
  std::vector<double> logs;
  for (double t : t_grid) {
    double value = 0;
    if (low) {
      const auto [a, d] = propagate(u, u, t, pp.nu_bar);
      value = regime == DecayRegime::low_L2 ? pair_norm(a, d, 2.0) : pair_norm(a, d, pp.p);
    } else {
      std::unordered_map<int, GreenExpansion<double>> table;
      SpectralField x(g, Rank::scalar), y(g, Rank::scalar);
      for (Eigen::Index i = 0; i < g.num_points(); ++i) {
        if (u.coeffs()(i, 0) == Complex(0.0)) continue;
        const int key = g.mode_norm2()(i);
        auto it = table.find(key);
        if (it == table.end()) it = table.emplace(key, ghat_expansion(g.xi_norm()(i), t, pp.nu_bar, R0)).first;
        if (regime == DecayRegime::high_G1) {
          x.coeffs()(i, 0) = it->second.G1 * u.coeffs()(i, 0);
        } else {
          x.coeffs()(i, 0) = it->second.G2(0, 0) * u.coeffs()(i, 0);
          y.coeffs()(i, 0) = it->second.G2(1, 1) * u.coeffs()(i, 0);
        }
      }
      value = regime == DecayRegime::high_G1 ? lebesgue_norm(x, pp.p) : pair_norm(x, y, pp.p);
    }
    rep.norm.push_back(value);
    logs.push_back(std::log(value));
  }
  rep.fit = fit_rate(t_grid, logs);
  return rep;
}

HeatDecayReport heat_decay_probe(const DyadicSystem& sys, int j, double nu, double p, const std::vector<double>& t_grid,
                                 std::uint64_t seed) {
  if (!(nu > 0)) throw std::invalid_argument("heat_decay_probe: nu must be positive");
  const Grid& g = sys.grid();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField noise(g, Rank::scalar);
  for (Eigen::Index i = 1; i < g.num_points(); ++i) noise.coeffs()(i, 0) = Complex(normal(rng), normal(rng));
  const SpectralField u = delta_j(sys, hermitian_symmetrize(noise).zero_nyquist(), j);
  if (u.coeffs().abs().maxCoeff() == 0.0) throw std::invalid_argument("ring " + std::to_string(j) + " holds no lattice modes");
  HeatDecayReport rep;
  rep.j = j;
  rep.t = t_grid;
  const double four_j = std::exp2(2.0 * j);
  rep.slope_min = -nu * (64.0 / 9.0) * four_j;
  rep.slope_max = -nu * (9.0 / 16.0) * four_j;
  std::vector<double> logs;
  for (double t : t_grid) {
    rep.norm.push_back(lebesgue_norm(heat_semigroup(u, nu, t), p));
    logs.push_back(std::log(rep.norm.back()));
  }
  rep.fit = fit_rate(t_grid, logs);
  return rep;
}

void write_decay_csv(std::ostream& out, const std::vector<DecayReport>& reports) {
  out << "regime,j,t,norm,fitted_slope,fitted_intercept,r_squared\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.t.size(); ++i)
      out << to_string(r.regime) << ',' << r.j << ',' << r.t[i] << ',' << r.norm[i] << ',' << r.fit.slope << ','
          << r.fit.intercept << ',' << r.fit.r_squared << '\n';
}

}  // namespace besov_ns
