#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besov_ns/littlewood_paley.hpp"
#include "besov_ns/norms.hpp"
#include "besov_ns/products.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace besov_ns;

namespace {

SpectralField random_field(const Grid& g, unsigned seed, double mean = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalField f(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) f.values()(i, 0) = normal(rng) + mean;
  return forward(f).zero_nyquist();
}

// Independent copy of the profile formula.
double oracle_chi(double r) {
  auto g = [](double s) { return s > 0 ? std::exp(-1 / s) : 0.0; };
  const double s = (4.0 / 3 - r) / (4.0 / 3 - 0.75);
  if (s <= 0) return 0;
  if (s >= 1) return 1;
  return g(s) / (g(s) + g(1 - s));
}
double oracle_phi(double r) { return oracle_chi(r / 2) - oracle_chi(r); }

}  // namespace

TEST_CASE("profile values and supports") {
  const DyadicSystem sys = build_dyadic_system(make_grid(1, 64));
  CHECK(sys.chi(0.5) == 1.0);
  CHECK(sys.chi(4.0 / 3) == 0.0);
  CHECK(sys.phi(0.5) == 0.0);
  CHECK(sys.phi(0.74) == 0.0);
  CHECK(sys.phi(2.7) == 0.0);
  CHECK(sys.phi(1.0) > 0.0);
  CHECK(sys.phi(1.0) <= 1.0);
  for (double r : {0.8, 1.0, 1.7, 2.3}) CHECK(sys.phi(r) == doctest::Approx(oracle_phi(r)).epsilon(1e-15));
  // sum over j of phi(2^{-j} r) at r = 2^j is 1
  double sum = 0;
  for (int j = -3; j <= 3; ++j) sum += sys.phi(std::ldexp(1.0, -j));
  CHECK(std::abs(sum - 1) < 1e-14);
  std::ostringstream csv;
  write_profile_csv(csv, sys, 5);
  CHECK(csv.str().rfind("xi,chi,phi\n", 0) == 0);
}

TEST_CASE("j range on 2pi grids") {
  const DyadicSystem s1 = build_dyadic_system(make_grid(1, 64));
  CHECK(s1.j_min() == -1);
  CHECK(s1.j_max() == 5);  // 2^5 * 3/4 = 24 < 32 <= 48
  CHECK(s1.truncated(4));
  CHECK_FALSE(s1.truncated(3));
  const DyadicSystem s2 = build_dyadic_system(make_grid(2, 64));
  CHECK(s2.j_max() == 5);  // corner 32 sqrt 2 = 45.25 < 48
  CHECK_THROWS_AS(s2.block_symbol(6), std::out_of_range);
}

TEST_CASE("partition of unity at every lattice frequency") {
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, n == 3 ? 16 : 64, n == 2 ? 3.0 : 2 * std::numbers::pi);
    const DyadicSystem sys = build_dyadic_system(g);
    Eigen::ArrayXd total = sys.lowpass_symbol(sys.j_min());
    for (int j : sys.j_values()) total += sys.block_symbol(j);
    CHECK((total - 1.0).abs().maxCoeff() < 1e-10);
    CHECK(sys.lowpass_symbol(sys.j_min())(0) == 1.0);
    CHECK(sys.lowpass_symbol(sys.j_min()).tail(g.num_points() - 1).abs().maxCoeff() == 0.0);
  }
}

TEST_CASE("orthogonality, reconstruction and telescoping") {
  const Grid g = make_grid(2, 64);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField f = random_field(g, 5, 0.3);
  for (int j : sys.j_values())
    for (int k : sys.j_values())
      if (std::abs(j - k) >= 2) CHECK(delta_j(sys, delta_j(sys, f, k), j).coeffs().abs().maxCoeff() < 1e-12);
  const LPDecomposition d = decompose(sys, f);
  CHECK(lebesgue_norm(d.reconstruct() - f, 2) < 1e-10 * lebesgue_norm(f, 2));
  for (int j = sys.j_min(); j <= sys.j_max(); ++j)
    for (int jp = sys.j_min(); jp < j; ++jp) {
      SpectralField diff = s_j(sys, f, j) - s_j(sys, f, jp);
      for (int k = jp; k < j; ++k) diff -= delta_j(sys, f, k);
      CHECK(lebesgue_norm(diff, 2) < 1e-10);
    }
  // constant field passes every lowpass unchanged
  const SpectralField c = forward(sample(g, [](const Eigen::VectorXd&) { return 2.5; }));
  CHECK(lebesgue_norm(s_j(sys, c, 1) - c, 2) < 1e-14);
}

TEST_CASE("single cosine mode") {
  const Grid g = make_grid(1, 64);
  const DyadicSystem sys = build_dyadic_system(g);
  for (int j = 0; j <= 3; ++j) {
    const int m = 1 << j;
    const SpectralField f = forward(sample(g, [m](const Eigen::VectorXd& x) { return std::cos(m * x(0)); }));
    const SpectralField dj = delta_j(sys, f, j);
    CHECK(std::abs(dj.coeffs()(m, 0) - 0.5 * oracle_phi(1.0)) < 1e-14);
    if (j + 3 <= sys.j_max()) CHECK(delta_j(sys, f, j + 3).coeffs().abs().maxCoeff() < 1e-15);
    if (j + 2 <= 4) {
      const int m4 = 1 << (j + 2);
      const SpectralField h =
          forward(sample(g, [m4](const Eigen::VectorXd& x) { return std::cos(m4 * x(0)); }));
      CHECK(s_j(sys, h, j).coeffs().abs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("vanishing interaction of low-high products") {
  const Grid g = make_grid(2, 64);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField f = random_field(g, 21);
  const SpectralField h = random_field(g, 22);
  for (int k = sys.j_min(); k <= sys.j_max(); ++k) {
    const SpectralField prod = multiply(s_j(sys, f, k - 1), delta_j(sys, h, k));
    for (int j : sys.j_values())
      if (std::abs(j - k) >= 5) CHECK(delta_j(sys, prod, j).coeffs().abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Bernstein probe") {
  const Grid g = make_grid(2, 64);
  const DyadicSystem sys = build_dyadic_system(g);
  Eigen::VectorXi e1(2);
  e1 << 1, 0;
  for (int j = 0; j <= 4; ++j) {
    const int m = 1 << j;
    const SpectralField f = forward(sample(g, [m](const Eigen::VectorXd& x) { return std::sin(m * x(0)); }));
    const auto rep = bernstein_probe(sys, f, j, 2, 2, e1);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.ratio <= 8.0 / 3);
  }
  const SpectralField c = forward(sample(g, [](const Eigen::VectorXd&) { return 1.0; }));
  CHECK(bernstein_probe(sys, c, 0, 2, 2, Eigen::VectorXi::Zero(2)).ratio == doctest::Approx(1.0));
  CHECK_THROWS(bernstein_probe(sys, c, 0, 4, 2, e1));

  // uniformity across rings: random data in L^2, a ring-localized spike in L^inf
  double lo = 1e300, hi = 0, spike_lo = 1e300, spike_hi = 0;
  PhysicalField delta(g, Rank::scalar);
  delta.values()(0, 0) = 1.0;
  for (int j = 1; j <= 4; ++j) {
    const SpectralField f = delta_j(sys, random_field(g, 40 + j), j);
    const double r = bernstein_probe(sys, f, j, 2, 2, e1).ratio;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    const double rs = bernstein_probe(sys, delta_j(sys, forward(delta), j), j, 2, kInfinity, e1).ratio;
    spike_lo = std::min(spike_lo, rs);
    spike_hi = std::max(spike_hi, rs);
  }
  CHECK(hi / lo < 2.0);
  CHECK(spike_hi / spike_lo < 2.0);
}
