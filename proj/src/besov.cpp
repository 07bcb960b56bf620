#include "besov_ns/besov.hpp"

#include "besov_ns/norms.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace besov_ns {

void HybridParams::validate() const {
  if (!(p >= 2.0)) throw std::invalid_argument("hybrid exponent p must be >= 2");
  if (!(R0 > 0.0)) throw std::invalid_argument("frequency threshold R0 must be positive");
}

BlockNorms block_norms(const DyadicSystem& sys, const SpectralField& f, double p) {
  BlockNorms bn;
  bn.p = p;
  bn.j = sys.j_values();
  bn.l2.resize(sys.num_blocks());
  bn.lp.resize(sys.num_blocks());
  for (int k = 0; k < sys.num_blocks(); ++k) {
    const PhysicalField block = inverse(delta_j(sys, f, bn.j[k]));
    bn.l2(k) = lebesgue_norm(block, 2.0);
    bn.lp(k) = p == 2.0 ? bn.l2(k) : lebesgue_norm(block, p);
  }
  return bn;
}

double besov_norm(const DyadicSystem& sys, const SpectralField& f, double s, double p, double q,
                  bool* mean_excluded) {
  if (!(q >= 1.0)) throw std::invalid_argument("summability index q must be >= 1");
  if (mean_excluded) *mean_excluded = (f.coeffs().row(0).abs() > 0.0).any();
  const BlockNorms bn = block_norms(sys, f, p);
  Eigen::ArrayXd w(bn.j.size());
  for (std::size_t k = 0; k < bn.j.size(); ++k) w(k) = std::exp2(s * bn.j[k]) * bn.lp(k);
  if (std::isinf(q)) return w.maxCoeff();
  if (q == 1.0) return w.sum();
  return std::pow(w.pow(q).sum(), 1.0 / q);
}

double hybrid_norm(const BlockNorms& bn, const HybridParams& hp) {
  hp.validate();
  if (hp.p != 2.0 && hp.p != bn.p) throw std::invalid_argument("block norms were taken in a different L^p");
  double sum = 0.0;
  for (std::size_t k = 0; k < bn.j.size(); ++k) {
    const int j = bn.j[k];
    sum += std::exp2(j) <= hp.R0 ? std::exp2(hp.s * j) * bn.l2(k) : std::exp2(hp.sigma * j) * bn.lp(k);
  }
  return sum;
}

double hybrid_norm(const DyadicSystem& sys, const SpectralField& f, const HybridParams& hp) {
  hp.validate();
  return hybrid_norm(block_norms(sys, f, hp.p), hp);
}

NormSeries::NormSeries(std::vector<int> j, double p, std::string label)
    : j_(std::move(j)), p_(p), label_(std::move(label)) {}

void NormSeries::append(double t, const BlockNorms& bn) {
  if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("norm series times must increase");
  if (bn.j != j_ || bn.p != p_) throw std::invalid_argument("block norms do not match the series layout");
  times_.push_back(t);
  l2_.push_back(bn.l2);
  lp_.push_back(bn.lp);
}

Eigen::ArrayXXd NormSeries::l2() const {
  Eigen::ArrayXXd out(samples(), static_cast<Eigen::Index>(j_.size()));
  for (Eigen::Index i = 0; i < samples(); ++i) out.row(i) = l2_[i].transpose();
  return out;
}

Eigen::ArrayXXd NormSeries::lp() const {
  Eigen::ArrayXXd out(samples(), static_cast<Eigen::Index>(j_.size()));
  for (Eigen::Index i = 0; i < samples(); ++i) out.row(i) = lp_[i].transpose();
  return out;
}

namespace {

// Time L^r norm of one column of samples (trapezoid in t).
double time_norm(const std::vector<double>& t, const Eigen::ArrayXd& x, double r) {
  if (std::isinf(r)) return x.abs().maxCoeff();
  double integral = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i)
    integral += 0.5 * (t[i] - t[i - 1]) * (std::pow(std::abs(x(i - 1)), r) + std::pow(std::abs(x(i)), r));
  return std::pow(integral, 1.0 / r);
}

}  // namespace

double chemin_lerner_norm(const NormSeries& series, double r, const HybridParams& hp) {
  if (series.empty()) throw std::invalid_argument("empty norm series");
  if (!(r >= 1.0)) throw std::invalid_argument("time exponent r must be >= 1");
  hp.validate();
  if (hp.p != 2.0 && hp.p != series.p()) throw std::invalid_argument("series was taken in a different L^p");
  const Eigen::ArrayXXd l2 = series.l2();
  const Eigen::ArrayXXd lp = series.lp();
  double sum = 0.0;
  for (std::size_t k = 0; k < series.j().size(); ++k) {
    const int j = series.j()[k];
    const Eigen::Index c = static_cast<Eigen::Index>(k);
    sum += std::exp2(j) <= hp.R0 ? std::exp2(hp.s * j) * time_norm(series.times(), l2.col(c), r)
                                 : std::exp2(hp.sigma * j) * time_norm(series.times(), lp.col(c), r);
  }
  return sum;
}

EmbeddingReport embedding_probe(const DyadicSystem& sys, const SpectralField& f, double p, double R0) {
  const double n = sys.grid().dim();
  const BlockNorms bn = block_norms(sys, f, p);
  EmbeddingReport rep;
  rep.sup_norm = lebesgue_norm(f, kInfinity);
  rep.hybrid = hybrid_norm(bn, {n / 2, n / p, p, R0});
  rep.ratio = rep.hybrid > 0.0 ? rep.sup_norm / rep.hybrid : 0.0;

  const HybridParams a{n / 2 - 1, n / p - 1, p, R0};
  const HybridParams b{n / 2 + 1, n / p + 1, p, R0};
  const double na = hybrid_norm(bn, a);
  const double nb = hybrid_norm(bn, b);
  for (double theta : {0.25, 0.5, 0.75}) {
    const HybridParams mid{theta * a.s + (1 - theta) * b.s, theta * a.sigma + (1 - theta) * b.sigma, p, R0};
    rep.interpolation.push_back({theta, hybrid_norm(bn, mid), std::pow(na, theta) * std::pow(nb, 1 - theta)});
  }
  return rep;
}

void write_block_csv(std::ostream& out, const BlockNorms& bn) {
  out << "j,two_j,norm_l2,norm_lp\n";
  for (std::size_t k = 0; k < bn.j.size(); ++k)
    out << bn.j[k] << ',' << std::exp2(bn.j[k]) << ',' << bn.l2(k) << ',' << bn.lp(k) << '\n';
}

}  // namespace besov_ns
