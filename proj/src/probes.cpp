#include "besov_ns/probes.hpp"

#include "besov_ns/differential.hpp"
#include "besov_ns/norms.hpp"
#include "besov_ns/parallel.hpp"
#include "besov_ns/paraproduct.hpp"
#include "besov_ns/products.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace besov_ns {

const char* to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::product_a:
      return "product_a";
    case ProbeKind::product_b:
      return "product_b";
    case ProbeKind::para_high:
      return "para_high";
    case ProbeKind::remainder:
      return "remainder";
    case ProbeKind::commutator:
      return "commutator";
    case ProbeKind::composition:
      return "composition";
  }
  return "unknown";
}

ProbeKind probe_kind_from_string(const std::string& name) {
  for (ProbeKind k : {ProbeKind::product_a, ProbeKind::product_b, ProbeKind::para_high, ProbeKind::remainder,
                      ProbeKind::commutator, ProbeKind::composition})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown probe kind '" + name + "'");
}

namespace {

void require(bool ok, const char* constraint) {
  if (!ok) throw std::invalid_argument(std::string("requires ") + constraint);
}

bool is_high(int j, double R0) { return std::exp2(j) > R0; }

double hyb(const DyadicSystem& sys, const SpectralField& f, double s, double sigma, const ProbeParams& pp) {
  return hybrid_norm(sys, f, {s, sigma, pp.p, pp.R0});
}

}  // namespace

void check_admissible(ProbeKind kind, const ProbeParams& pp, int n) {
  const double np = n / pp.p;
  require(pp.p >= 2.0 && pp.p <= 4.0, "2 <= p <= 4");
  require(pp.R0 > 0.0, "R0 > 0");
  switch (kind) {
    case ProbeKind::product_a:
      require(pp.sigma <= np, "sigma <= n/p");
      require(pp.tau <= np, "tau <= n/p");
      require(pp.sigma + pp.tau > 0, "sigma+tau > 0");
      break;
    case ProbeKind::product_b:
      require(pp.s <= np, "s <= n/p");
      require(pp.s + pp.t > n - 2 * np, "s+t > n - 2n/p");
      break;
    case ProbeKind::para_high:
      require(pp.s <= 0.5 * n, "s <= n/2");
      require(pp.sigma <= np, "sigma <= n/p");
      break;
    case ProbeKind::remainder:
      require(pp.s + pp.t > 0, "s+t > 0");
      require(pp.s + pp.tau > 0, "s+tau > 0");
      require(pp.sigma + pp.t > 0, "sigma+t > 0");
      require(pp.sigma + pp.tau > 0, "sigma+tau > 0");
      break;
    case ProbeKind::commutator:
      require(-np < pp.s && pp.s <= 0.5 * n + 1, "-n/p < s <= n/2 + 1");
      require(-np < pp.sigma && pp.sigma <= np + 1, "-n/p < sigma <= n/p + 1");
      break;
    case ProbeKind::composition:
      require(pp.s > 0, "s > 0");
      require(pp.sigma > 0, "sigma > 0");
      require(pp.s >= pp.sigma - 0.5 * n + np, "s >= sigma - n/2 + n/p");
      require(pp.amplitude > 0 && pp.amplitude < 1, "0 < amplitude < 1");
      require(pp.composition == "L" || pp.composition == "K", "composition L or K");
      break;
  }
}

SpectralField sample_random_field(const DyadicSystem& sys, Rank rank, double s, std::uint64_t seed) {
  const Grid& g = sys.grid();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.05, 1.0);

  const int j_lo = sys.j_min() + 1;
  const int j_hi = std::max(j_lo, sys.j_max() - 1);
  std::vector<double> c(j_hi - j_lo + 1);
  double total = 0;
  for (double& v : c) total += (v = uniform(rng));
  for (double& v : c) v /= total;

  SpectralField f(g, rank);
  const Eigen::ArrayXd& r = g.xi_norm();
  for (int comp = 0; comp < f.components(); ++comp)
    for (Eigen::Index i = 1; i < g.num_points(); ++i) {
      if (g.nyquist_mask()(i)) continue;
      // block whose ring is centred nearest to |xi|
      const int j = static_cast<int>(std::lround(std::log2(r(i))));
      if (j < j_lo || j > j_hi) continue;
      const double amp = std::exp2(-j * s) * c[j - j_lo] * std::pow(2.0, -0.5 * j * g.dim());
      f.coeffs()(i, comp) = amp * Complex(normal(rng), normal(rng));
    }
  return hermitian_symmetrize(f);
}

ProbeInputs sample_probe_inputs(const DyadicSystem& sys, ProbeKind kind, const ProbeParams& pp,
                                std::uint64_t seed) {
  ProbeInputs in;
  switch (kind) {
    case ProbeKind::commutator:
      in.f = sample_random_field(sys, Rank::vector, 0.5 * sys.grid().dim() + 1, seed);
      in.g = sample_random_field(sys, Rank::scalar, pp.s, seed ^ 0x9e3779b97f4a7c15ULL);
      break;
    case ProbeKind::composition: {
      in.f = sample_random_field(sys, Rank::scalar, pp.s, seed);
      const double sup = lebesgue_norm(in.f, kInfinity);
      if (sup > 0) in.f *= Complex(pp.amplitude / sup);
      break;
    }
    default:
      in.f = sample_random_field(sys, Rank::scalar, pp.s, seed);
      in.g = sample_random_field(sys, Rank::scalar, pp.t, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  return in;
}

ProbeReport estimate_ratio_probe(const DyadicSystem& sys, ProbeKind kind, const ProbeInputs& in,
                                 const ProbeParams& pp) {
  const int n = sys.grid().dim();
  check_admissible(kind, pp, n);
  const double np = n / pp.p;
  const double half = 0.5 * n;
  const double p_conj = n - np;  // n / p'
  ProbeReport rep;
  rep.kind = kind;

  switch (kind) {
    case ProbeKind::product_a: {
      const BlockNorms bn = block_norms(sys, multiply(in.f, in.g), pp.p);
      for (std::size_t k = 0; k < bn.j.size(); ++k)
        if (is_high(bn.j[k], pp.R0)) rep.lhs += std::exp2(bn.j[k] * (pp.sigma + pp.tau - np)) * bn.lp(k);
      rep.rhs = hyb(sys, in.f, half - np + pp.sigma, pp.sigma, pp) * hyb(sys, in.g, half - np + pp.tau, pp.tau, pp);
      break;
    }
    case ProbeKind::product_b: {
      const BlockNorms bn = block_norms(sys, multiply(in.f, in.g), 2.0);
      for (std::size_t k = 0; k < bn.j.size(); ++k)
        if (!is_high(bn.j[k], pp.R0)) rep.lhs += std::exp2(bn.j[k] * (pp.s + pp.t - half)) * bn.l2(k);
      const double shift = np - half;
      rep.rhs = hyb(sys, in.f, pp.s, pp.s + shift, pp) * hyb(sys, in.g, pp.t, pp.t + shift + pp.gamma, pp) +
                hyb(sys, in.g, pp.s, pp.s + shift, pp) * hyb(sys, in.f, pp.t, pp.t + shift, pp);
      break;
    }
    case ProbeKind::para_high: {
      const BonySplit split = bony_split(sys, in.f, in.g);
      const BlockNorms bn = block_norms(sys, split.Tfg, pp.p);
      for (std::size_t k = 0; k < bn.j.size(); ++k) {
        const int j = bn.j[k];
        if (!is_high(j, pp.R0)) continue;
        const double w = std::exp2(j * (p_conj - pp.s - pp.t)) + std::exp2(j * (half - pp.s - pp.tau)) +
                         std::exp2(j * (np - pp.sigma - pp.tau));
        rep.lhs += bn.lp(k) / w;
      }
      rep.rhs = hyb(sys, in.f, pp.s, pp.sigma, pp) * hyb(sys, in.g, pp.t, pp.tau, pp);
      break;
    }
    case ProbeKind::remainder: {
      const BonySplit split = bony_split(sys, in.f, in.g);
      const BlockNorms bn = block_norms(sys, split.R, pp.p);
      for (std::size_t k = 0; k < bn.j.size(); ++k) {
        const int j = bn.j[k];
        if (is_high(j, pp.R0)) {
          const double w = std::exp2(j * (p_conj - pp.s - pp.t)) + std::exp2(j * (half - pp.s - pp.tau)) +
                           std::exp2(j * (half - pp.sigma - pp.t)) + std::exp2(j * (np - pp.sigma - pp.tau));
          rep.lhs += bn.lp(k) / w;
        } else {
          const double w = std::exp2(j * (half - pp.s - pp.t)) + std::exp2(j * (np - pp.s - pp.tau)) +
                           std::exp2(j * (np - pp.sigma - pp.t)) + std::exp2(j * (2 * np - half - pp.sigma - pp.tau));
          rep.lhs += bn.l2(k) / w;
        }
      }
      rep.rhs = hyb(sys, in.f, pp.s, pp.sigma, pp) * hyb(sys, in.g, pp.t, pp.tau, pp);
      break;
    }
    case ProbeKind::commutator: {
      for (int j : sys.j_values()) {
        if (std::exp2(j) < pp.R0) continue;
        const double w = std::exp2(-j * pp.sigma) + std::exp2(j * (half - np - pp.s));
        rep.lhs += lebesgue_norm(commutator_field(sys, in.f, in.g, j), pp.p) / w;
      }
      rep.rhs = hyb(sys, in.f, half + 1, np + 1, pp) * hyb(sys, in.g, pp.s, pp.sigma, pp);
      break;
    }
    case ProbeKind::composition: {
      const SpectralField Ff = pp.composition == "L" ? compose_L(in.f) : compose_K(in.f, pp.gamma_adiabatic);
      rep.lhs = hyb(sys, Ff, pp.s, pp.sigma, pp);
      const int power = static_cast<int>(std::max(std::floor(pp.s), std::floor(pp.sigma))) + 1;
      rep.rhs = std::pow(1.0 + hyb(sys, in.f, np, np, pp), power) * hyb(sys, in.f, pp.s, pp.sigma, pp);
      break;
    }
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

ProbeBatch run_probe_batch(const DyadicSystem& sys, ProbeKind kind, const ProbeParams& params, int samples,
                           std::uint64_t first_seed) {
  check_admissible(kind, params, sys.grid().dim());
  ProbeBatch batch;
  batch.kind = kind;
  batch.params = params;
  batch.grid_size = sys.grid().size();
  batch.reports.resize(samples);
  parallel_for(samples, [&](std::size_t i) {
    const std::uint64_t seed = first_seed + i;
    batch.reports[i] = estimate_ratio_probe(sys, kind, sample_probe_inputs(sys, kind, params, seed), params);
    batch.reports[i].seed = seed;
  });
  for (const auto& r : batch.reports) batch.max_ratio = std::max(batch.max_ratio, r.ratio);
  return batch;
}

void write_probe_csv(std::ostream& out, const ProbeBatch& batch, bool header) {
  if (header) out << "kind,s,sigma,t,tau,p,R0,N,seed,lhs,rhs,ratio\n";
  const ProbeParams& pp = batch.params;
  for (const auto& r : batch.reports)
    out << to_string(batch.kind) << ',' << pp.s << ',' << pp.sigma << ',' << pp.t << ',' << pp.tau << ',' << pp.p
        << ',' << pp.R0 << ',' << batch.grid_size << ',' << r.seed << ',' << r.lhs << ',' << r.rhs << ','
        << r.ratio << '\n';
}

}  // namespace besov_ns
