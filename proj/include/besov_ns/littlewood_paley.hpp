#pragma once

#include "besov_ns/spectral_field.hpp"

#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

namespace besov_ns {

struct ProfileParams {
  /// chi is identically 1 on |xi| <= 3/4 + delta_flat. Clamped to [0, 0.5].
  double delta_flat = 0.0;
};

/// Smooth dyadic partition of unity adapted to a grid.
///
/// chi(r) = ramp((4/3 - r) / (4/3 - 3/4 - delta_flat)) with
/// ramp(s) = g(s) / (g(s) + g(1 - s)), g(s) = exp(-1/s) for s > 0, and
/// phi(r) = chi(r/2) - chi(r), supported in 3/4 <= r <= 8/3.
///
/// Blocks run over j_min..j_max: j_min is the smallest j whose ring top
/// 2^j 8/3 exceeds the smallest lattice frequency, so the lowpass floor
/// S_{j_min} keeps only the mean; j_max is the largest j whose ring bottom
/// 2^j 3/4 lies below the largest lattice frequency, so every lattice
/// frequency is covered.
class DyadicSystem {
 public:
  DyadicSystem() = default;

  const Grid& grid() const { return grid_; }
  const ProfileParams& params() const { return params_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int num_blocks() const { return j_max_ - j_min_ + 1; }
  std::vector<int> j_values() const;

  double chi(double r) const;
  double phi(double r) const;

  /// True when the ring of block j reaches past the per-axis Nyquist frequency.
  bool truncated(int j) const;

  /// phi(2^{-j} |xi|) per lattice point. Throws std::out_of_range outside j_range.
  const Eigen::ArrayXd& block_symbol(int j) const;
  /// chi(2^{-j} |xi|) per lattice point; j is clamped to [j_min, j_max + 1].
  Eigen::ArrayXd lowpass_symbol(int j) const;

 private:
  friend DyadicSystem build_dyadic_system(const Grid& grid, ProfileParams params);

  Grid grid_;
  ProfileParams params_;
  int j_min_ = 0;
  int j_max_ = -1;
  std::shared_ptr<const std::vector<Eigen::ArrayXd>> symbols_;
};

DyadicSystem build_dyadic_system(const Grid& grid, ProfileParams params = {});

/// Delta_j f = phi(2^{-j} D) f. Throws std::out_of_range outside j_range.
SpectralField delta_j(const DyadicSystem& sys, const SpectralField& f, int j);

/// S_j f = chi(2^{-j} D) f, j clamped to [j_min, j_max + 1].
SpectralField s_j(const DyadicSystem& sys, const SpectralField& f, int j);

struct LPDecomposition {
  SpectralField lowpass_floor;  // S_{j_min} f, the mean
  std::vector<std::pair<int, SpectralField>> blocks;

  SpectralField reconstruct() const;
};

LPDecomposition decompose(const DyadicSystem& sys, const SpectralField& f);

struct BernsteinReport {
  int j = 0;
  double p = 2.0;
  double q = 2.0;
  int order = 0;        // |gamma|
  double lhs = 0.0;     // ||d^gamma f||_q
  double scale = 0.0;   // 2^{j|gamma| + jn(1/p - 1/q)} ||f||_p
  double ratio = 0.0;   // lhs / scale
};

/// Measured constant in ||d^gamma f||_q <= C 2^{j|gamma| + jn(1/p-1/q)} ||f||_p
/// for f already localized to block j. Throws std::invalid_argument if p > q.
BernsteinReport bernstein_probe(const DyadicSystem& sys, const SpectralField& f, int j, double p, double q,
                                const Eigen::VectorXi& gamma);

/// CSV with columns xi, chi, phi sampled uniformly on [0, r_max].
void write_profile_csv(std::ostream& out, const DyadicSystem& sys, int samples = 401, double r_max = 3.0);

}  // namespace besov_ns
