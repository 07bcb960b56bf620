#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besov_ns/besov.hpp"
#include "besov_ns/norms.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace besov_ns;

namespace {

SpectralField random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalField f(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) f.values()(i, 0) = normal(rng);
  SpectralField s = forward(f).zero_nyquist();
  s.coeffs()(0, 0) = 0;
  return s;
}

double oracle_phi(double r) {
  auto g = [](double s) { return s > 0 ? std::exp(-1 / s) : 0.0; };
  auto chi = [&](double x) {
    const double s = (4.0 / 3 - x) / (4.0 / 3 - 0.75);
    if (s <= 0) return 0.0;
    if (s >= 1) return 1.0;
    return g(s) / (g(s) + g(1 - s));
  };
  return chi(r / 2) - chi(r);
}

}  // namespace

TEST_CASE("besov norm of a cosine against a brute-force block sum") {
  const Grid g = make_grid(1, 128);
  const DyadicSystem sys = build_dyadic_system(g);
  for (double p : {2.0, 3.0, kInfinity})
    for (int j = 1; j <= 4; ++j) {
      const int m = 1 << j;
      // ||cos(m x)||_p by direct quadrature
      double cos_norm = 0;
      for (int i = 0; i < 128; ++i) {
        const double v = std::abs(std::cos(m * 2 * std::numbers::pi * i / 128));
        cos_norm = std::isinf(p) ? std::max(cos_norm, v) : cos_norm + std::pow(v, p) * 2 * std::numbers::pi / 128;
      }
      if (!std::isinf(p)) cos_norm = std::pow(cos_norm, 1 / p);
      const double s = 0.7;
      double oracle = 0;
      for (int k = sys.j_min(); k <= sys.j_max(); ++k) oracle += std::exp2(k * s) * oracle_phi(std::ldexp(m, -k)) * cos_norm;
      const SpectralField f =
          forward(sample(g, [m](const Eigen::VectorXd& x) { return std::cos(m * x(0)); }));
      CHECK(besov_norm(sys, f, s, p, 1) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("basic norm properties") {
  const Grid g = make_grid(2, 32);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField f = random_field(g, 1);
  const SpectralField h = random_field(g, 2);
  CHECK(besov_norm(sys, SpectralField(g, Rank::scalar), 1, 2, 1) == 0.0);
  const double nf = besov_norm(sys, f, 0.5, 3, 1);
  CHECK(besov_norm(sys, Complex(-3.0) * f, 0.5, 3, 1) == doctest::Approx(3 * nf).epsilon(1e-13));
  CHECK(besov_norm(sys, f + h, 0.5, 3, 1) <= nf + besov_norm(sys, h, 0.5, 3, 1));
  bool flagged = true;
  besov_norm(sys, f, 0.5, 2, 2, &flagged);
  CHECK_FALSE(flagged);
  SpectralField fm = f;
  fm.coeffs()(0, 0) = 1.0;
  besov_norm(sys, fm, 0.5, 2, 2, &flagged);
  CHECK(flagged);
  CHECK(besov_norm(sys, fm, 0.5, 2, 2) == doctest::Approx(besov_norm(sys, f, 0.5, 2, 2)));
}

TEST_CASE("dyadic dilation on the torus scales by 2^s") {
  // N large enough that |f|^4 is integrated exactly on every other sample.
  const Grid g = make_grid(2, 128);
  const DyadicSystem sys = build_dyadic_system(g);
  const DyadicSystem* s = &sys;
  const SpectralField ring = delta_j(*s, random_field(g, 9), 2);
  SpectralField dilated(g, Rank::scalar);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    if (ring.coeffs()(i, 0) == Complex(0.0)) continue;
    dilated.coeffs()(g.flat_index(2 * g.lattice_mode(i)), 0) = ring.coeffs()(i, 0);
  }
  for (double p : {2.0, 4.0})
    for (double sv : {-0.5, 0.0, 1.0}) {
      const double ratio = besov_norm(sys, dilated, sv, p, 1) / besov_norm(sys, ring, sv, p, 1);
      CHECK(ratio == doctest::Approx(std::exp2(sv)).epsilon(1e-10));
    }
}

TEST_CASE("hybrid norm") {
  const Grid g = make_grid(2, 32);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField f = random_field(g, 3);
  CHECK(hybrid_norm(sys, f, {0.4, 0.4, 2.0, 3.0}) == doctest::Approx(besov_norm(sys, f, 0.4, 2, 1)).epsilon(1e-12));
  // field supported below R0 has no high part
  const SpectralField low = s_j(sys, f, 1);
  const double all_low = hybrid_norm(sys, low, {0.3, 5.0, 4.0, 4.0});
  CHECK(all_low == doctest::Approx(hybrid_norm(sys, low, {0.3, -5.0, 4.0, 4.0})).epsilon(1e-14));
  CHECK_THROWS(hybrid_norm(sys, f, {0, 0, 1.5, 1}));
  CHECK_THROWS(hybrid_norm(sys, f, {0, 0, 2, 0}));
  // inclusion B^s_{2,1} into the hybrid space with sigma = s - n/2 + n/p
  double worst = 0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    const SpectralField r = random_field(g, 100 + seed);
    const double p = 4, sv = 0.5;
    worst = std::max(worst, hybrid_norm(sys, r, {sv, sv - 1 + 2 / p, p, 2}) / besov_norm(sys, r, sv, 2, 1));
  }
  CHECK(worst < 10);
}

TEST_CASE("Chemin-Lerner norms") {
  const Grid g = make_grid(2, 32);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField f = random_field(g, 4);
  const HybridParams hp{0.2, 0.7, 3.0, 2.0};
  const BlockNorms bn = block_norms(sys, f, 3.0);
  NormSeries constant(sys.j_values(), 3.0);
  for (int i = 0; i <= 10; ++i) constant.append(0.3 * i, bn);
  for (double r : {1.0, 2.0, kInfinity})
    CHECK(chemin_lerner_norm(constant, r, hp) ==
          doctest::Approx(std::pow(3.0, std::isinf(r) ? 0 : 1 / r) * hybrid_norm(bn, hp)).epsilon(1e-12));

  // heat-like decay per block: sup is at t = 0, and r = 1 equals the integral of hybrid norms
  NormSeries decay(sys.j_values(), 3.0);
  std::vector<double> pointwise;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.05 * i;
    SpectralField ft = f;
    ft.coeffs().col(0) *= (-g.xi_norm().square() * t).exp().cast<Complex>();
    const BlockNorms b = block_norms(sys, ft, 3.0);
    decay.append(t, b);
    pointwise.push_back(hybrid_norm(b, hp));
  }
  CHECK(chemin_lerner_norm(decay, kInfinity, hp) == doctest::Approx(hybrid_norm(bn, hp)).epsilon(1e-12));
  double integral = 0;
  for (int i = 1; i <= 20; ++i) integral += 0.5 * 0.05 * (pointwise[i - 1] + pointwise[i]);
  CHECK(chemin_lerner_norm(decay, 1.0, hp) == doctest::Approx(integral).epsilon(1e-12));

  CHECK_THROWS(chemin_lerner_norm(NormSeries(sys.j_values(), 3.0), 1.0, hp));
  CHECK_THROWS(decay.append(0.5, bn));
}

TEST_CASE("embedding and interpolation") {
  const Grid g = make_grid(2, 32);
  const DyadicSystem sys = build_dyadic_system(g);
  const SpectralField mode = forward(sample(g, [](const Eigen::VectorXd& x) { return std::cos(3 * x(0)); }));
  const EmbeddingReport single = embedding_probe(sys, mode, 4, 2);
  for (const auto& c : single.interpolation) CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-10));
  const EmbeddingReport rnd = embedding_probe(sys, random_field(g, 8), 4, 2);
  for (const auto& c : rnd.interpolation) CHECK(c.lhs <= c.rhs * (1 + 1e-12));
  CHECK(std::isfinite(rnd.ratio));
  CHECK(rnd.ratio > 0);
  std::ostringstream csv;
  write_block_csv(csv, block_norms(sys, mode, 4));
  CHECK(csv.str().rfind("j,two_j,norm_l2,norm_lp\n", 0) == 0);
}
