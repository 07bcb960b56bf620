#pragma once

#include "besov_ns/fit.hpp"
#include "besov_ns/littlewood_paley.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace besov_ns {

// Linearized (a, d) system at frequency r = |xi|:
//   d/dt (a, d) = M (a, d),  M = [[0, -r], [r, -nu r^2]].
// Ghat(r, t) = exp(t M).

template <typename Scalar>
struct EigenPair {
  std::complex<Scalar> plus;
  std::complex<Scalar> minus;
};

/// lambda_{+-} = -nu r^2 / 2 +- sqrt(nu^2 r^4 - 4 r^2) / 2 (principal root).
/// For real roots lambda_+ is recovered as r^2 / lambda_- to avoid cancellation.
template <typename Scalar>
EigenPair<Scalar> eigenvalues(Scalar r, Scalar nu) {
  using C = std::complex<Scalar>;
  const Scalar m = -nu * r * r / 2;
  const C h = std::sqrt(C(nu * nu * r * r * r * r - 4 * r * r)) / Scalar(2);
  EigenPair<Scalar> e{C(m) + h, C(m) - h};
  if (h.imag() == 0 && r > 0) e.plus = C(r * r) / e.minus;
  return e;
}

namespace detail {

// sinh(z)/z for real z, and sin(z)/z when `trig` is set.
template <typename Scalar>
Scalar sinhc(Scalar z, bool trig) {
  using std::abs;
  const Scalar z2 = trig ? -z * z : z * z;
  if (abs(z) < Scalar(1e-4)) return 1 + z2 / 6 + z2 * z2 / 120;
  return trig ? std::sin(z) / z : std::sinh(z) / z;
}

template <typename Scalar>
Scalar half_gap(Scalar r, Scalar nu) {
  return r * std::sqrt(nu * nu * r * r - 4) / 2;
}

}  // namespace detail

/// exp(t M) as a real 2x2 matrix, G21 = -G12. Identity at r = 0.
/// Throws std::invalid_argument for t < 0.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> ghat(Scalar r, Scalar t, Scalar nu) {
  using Mat = Eigen::Matrix<Scalar, 2, 2>;
  if (t < 0) throw std::invalid_argument("ghat: t must be nonnegative");
  if (r == 0 || t == 0) return Mat::Identity();
  const Scalar m = -nu * r * r / 2;
  const Scalar disc = nu * nu * r * r - 4;
  Mat G;
  if (disc > 0) {
    const Scalar h = detail::half_gap(r, nu);
    if (h * t > 1) {
      // Separated real rates: write everything in e^{lambda_+ t} and
      // e^{lambda_- t} directly so nothing overflows.
      const Scalar lm = m - h;
      const Scalar lp = r * r / lm;
      const Scalar ep = std::exp(lp * t);
      const Scalar E = -ep * std::expm1(-2 * h * t) / (2 * h);
      G << ep - lp * E, -r * E, r * E, std::exp(lm * t) + lp * E;
      return G;
    }
  }
  // e^{tM} = e^{mt} (cosh(ht) I + t sinhc(ht) (M - m I)), h^2 = disc r^2 / 4.
  const bool trig = disc < 0;
  const Scalar w = r * std::sqrt(std::abs(disc)) / 2;
  const Scalar ch = trig ? std::cos(w * t) : std::cosh(w * t);
  const Scalar em = std::exp(m * t);
  const Scalar D1 = t * em * detail::sinhc(w * t, trig);
  G << em * ch - m * D1, -r * D1, r * D1, em * ch + m * D1;
  return G;
}

template <typename Scalar>
struct GreenExpansion {
  Scalar G1 = 0;
  Eigen::Matrix<Scalar, 2, 2> G2 = Eigen::Matrix<Scalar, 2, 2>::Zero();  // diagonal
};

/// Frequency above which the expansion is offered: max(R0, 10 / nu).
template <typename Scalar>
Scalar expansion_threshold(Scalar nu, Scalar R0) {
  return std::max(R0, Scalar(10) / nu);
}

/// High-frequency split
///   Ghat = e^{-t/nu} diag(1, 0) + e^{-nu r^2 t} diag(0, 1) + G1 [[0, 1], [-1, 0]] + G2.
/// Valid for any r > 2 / nu; the check against expansion_threshold(nu, R0)
/// enforces the regime where G1 = O(1/r) and G2 = O(1/r^2).
template <typename Scalar>
GreenExpansion<Scalar> ghat_expansion(Scalar r, Scalar t, Scalar nu, Scalar R0, bool check_threshold = true) {
  if (t < 0) throw std::invalid_argument("ghat_expansion: t must be nonnegative");
  if (check_threshold && r < expansion_threshold(nu, R0))
    throw std::invalid_argument("frequency below the high-frequency threshold");
  if (!(nu * r > 2)) throw std::invalid_argument("expansion needs real, distinct eigenvalues");
  const Scalar h = detail::half_gap(r, nu);
  const Scalar lm = -nu * r * r / 2 - h;
  const Scalar lp = r * r / lm;
  const Scalar ep = std::exp(lp * t);
  const Scalar E = -ep * std::expm1(-2 * h * t) / (2 * h);
  GreenExpansion<Scalar> out;
  out.G1 = -r * E;
  out.G2(0, 0) = -lp * E + std::exp(-t / nu) * std::expm1(-lp / (nu * lm) * t);
  out.G2(1, 1) = std::exp(-nu * r * r * t) * std::expm1(-lp * t) + lp * E;
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> assemble_expansion(const GreenExpansion<Scalar>& e, Scalar r, Scalar t, Scalar nu) {
  Eigen::Matrix<Scalar, 2, 2> G = e.G2;
  G(0, 0) += std::exp(-t / nu);
  G(1, 1) += std::exp(-nu * r * r * t);
  G(0, 1) += e.G1;
  G(1, 0) -= e.G1;
  return G;
}

/// Applies Ghat(|xi|, t) to every Fourier mode of the scalar pair (a, d).
std::pair<SpectralField, SpectralField> propagate(const SpectralField& a, const SpectralField& d, double t,
                                                  double nu_bar);

/// e^{nu t Delta}: multiplier e^{-nu |xi|^2 t}.
SpectralField heat_semigroup(const SpectralField& f, double nu, double t);

/// Homogeneous Lame flow d_t u - mu Delta u - (lambda + mu) grad div u = 0: the
/// component along xi decays with lambda + 2 mu, the orthogonal part with mu.
/// Throws std::invalid_argument "non-elliptic Lamé coefficients" unless
/// mu > 0 and lambda + 2 mu > 0.
SpectralField lame_semigroup(const SpectralField& v, double mu_bar, double lambda_bar, double t);

enum class DecayRegime { low_L2, low_Lp, high_G1, high_G2 };

const char* to_string(DecayRegime regime);
DecayRegime decay_regime_from_string(const std::string& name);

struct DecayProbeParams {
  double nu_bar = 1.0;
  /// Low/high split; nonpositive selects 2 / nu_bar.
  double R0 = 0.0;
  double p = 2.0;
  /// Rings above this one are dyadic dilations of its data, so every ring
  /// carries the same spectral profile.
  int reference_ring = 3;
  /// Use a single cosine at |xi| = 2^j instead of random ring data.
  bool single_mode = false;
  std::uint64_t seed = 42;
};

struct DecayReport {
  DecayRegime regime = DecayRegime::low_L2;
  int j = 0;
  std::vector<double> t;
  std::vector<double> norm;
  FitResult fit;  // log(norm) against t
};

/// Period 2 pi / omega of a low-frequency mode (r < 2 / nu), after which
/// exp(tM) is a multiple of the identity.
double oscillation_period(double r, double nu_bar);

/// Throws std::invalid_argument on regime/ring mismatch.
DecayReport decay_probe(const DyadicSystem& sys, DecayRegime regime, int j, const std::vector<double>& t_grid,
                        const DecayProbeParams& params = {});

struct HeatDecayReport {
  int j = 0;
  std::vector<double> t;
  std::vector<double> norm;
  FitResult fit;            // log(norm) against t
  double slope_min = 0.0;   // -nu (8/3)^2 4^j
  double slope_max = 0.0;   // -nu (3/4)^2 4^j
};

/// ||e^{nu t Delta} Delta_j f||_p over t for seeded white-noise f. The fitted rate
/// must sit inside [slope_min, slope_max] set by the ring radii.
HeatDecayReport heat_decay_probe(const DyadicSystem& sys, int j, double nu, double p, const std::vector<double>& t_grid,
                                 std::uint64_t seed = 42);

/// CSV columns regime, j, t, norm, fitted_slope, fitted_intercept, r_squared.
void write_decay_csv(std::ostream& out, const std::vector<DecayReport>& reports);

}  // namespace besov_ns
