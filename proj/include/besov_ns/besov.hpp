#pragma once

#include "besov_ns/littlewood_paley.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace besov_ns {

/// Hybrid Besov space parameters: blocks with 2^j <= R0 are weighted by
/// 2^{js} in L^2, blocks above by 2^{j sigma} in L^p.
struct HybridParams {
  double s = 0.0;
  double sigma = 0.0;
  double p = 2.0;
  double R0 = 1.0;

  /// Throws std::invalid_argument unless p >= 2 and R0 > 0.
  void validate() const;
};

/// ||Delta_j f||_2 and ||Delta_j f||_p for every block of a field.
struct BlockNorms {
  std::vector<int> j;
  Eigen::ArrayXd l2;
  Eigen::ArrayXd lp;
  double p = 2.0;
};

BlockNorms block_norms(const DyadicSystem& sys, const SpectralField& f, double p);

/// l^q over blocks of 2^{js} ||Delta_j f||_p. The mean mode belongs to no
/// block; when it is nonzero `mean_excluded` (if given) is set.
double besov_norm(const DyadicSystem& sys, const SpectralField& f, double s, double p, double q,
                  bool* mean_excluded = nullptr);

double hybrid_norm(const DyadicSystem& sys, const SpectralField& f, const HybridParams& hp);
/// Same weighted sum from precomputed block norms (bn.p must match hp.p unless hp.p = 2).
double hybrid_norm(const BlockNorms& bn, const HybridParams& hp);

/// Per-block norm samples over time.
class NormSeries {
 public:
  NormSeries() = default;
  NormSeries(std::vector<int> j, double p, std::string label = {});

  /// Times must be strictly increasing (std::invalid_argument otherwise).
  void append(double t, const BlockNorms& bn);

  const std::vector<double>& times() const { return times_; }
  const std::vector<int>& j() const { return j_; }
  double p() const { return p_; }
  const std::string& label() const { return label_; }
  bool empty() const { return times_.empty(); }
  Eigen::Index samples() const { return static_cast<Eigen::Index>(times_.size()); }
  /// (samples x blocks)
  Eigen::ArrayXXd l2() const;
  Eigen::ArrayXXd lp() const;

 private:
  std::vector<double> times_;
  std::vector<int> j_;
  double p_ = 2.0;
  std::string label_;
  std::vector<Eigen::ArrayXd> l2_;
  std::vector<Eigen::ArrayXd> lp_;
};

/// Chemin-Lerner norm: time L^r (trapezoid; max for r = inf) per block, then
/// the hybrid frequency sum. Throws std::invalid_argument on an empty series.
double chemin_lerner_norm(const NormSeries& series, double r, const HybridParams& hp);

struct InterpolationCheck {
  double theta = 0.0;
  double lhs = 0.0;  // norm at the interpolated indices
  double rhs = 0.0;  // ||f||_1^theta ||f||_2^{1-theta}
};

struct EmbeddingReport {
  double sup_norm = 0.0;     // ||f||_inf
  double hybrid = 0.0;       // ||f|| in the (n/2, n/p) hybrid space
  double ratio = 0.0;        // sup_norm / hybrid
  std::vector<InterpolationCheck> interpolation;
};

/// Embedding into L^inf and interpolation between (n/2 -+ 1, n/p -+ 1) for
/// theta in {1/4, 1/2, 3/4}.
EmbeddingReport embedding_probe(const DyadicSystem& sys, const SpectralField& f, double p, double R0);

/// CSV columns j, 2^j, ||Delta_j f||_2, ||Delta_j f||_p.
void write_block_csv(std::ostream& out, const BlockNorms& bn);

}  // namespace besov_ns
