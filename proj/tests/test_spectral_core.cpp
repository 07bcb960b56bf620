#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besov_ns/differential.hpp"
#include "besov_ns/field_io.hpp"
#include "besov_ns/multiplier.hpp"
#include "besov_ns/norms.hpp"
#include "besov_ns/products.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace besov_ns;
using std::numbers::pi;

namespace {

SpectralField random_field(const Grid& g, Rank rank, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalField f(g, rank);
  for (Eigen::Index i = 0; i < f.values().size(); ++i) f.values().data()[i] = normal(rng);
  return forward(f).zero_nyquist();
}

double max_abs(const Eigen::ArrayXXcd& a) { return a.abs().maxCoeff(); }

}  // namespace

TEST_CASE("grid construction and errors") {
  const Grid g = make_grid(2, 16);
  CHECK(g.num_points() == 256);
  CHECK(g.nyquist() == doctest::Approx(8.0));
  CHECK(g.xi_max() == doctest::Approx(8.0 * std::sqrt(2.0)));
  CHECK(g.mode_of_index(8) == -8);
  CHECK(g.index_of_mode(-1) == 15);
  Eigen::VectorXi m(2);
  m << 3, -2;
  CHECK(g.lattice_mode(g.flat_index(m)) == m);
  CHECK_THROWS_WITH(make_grid(4, 16), doctest::Contains("grid dimension must be 1, 2 or 3"));
  CHECK_THROWS_WITH(make_grid(2, 24), doctest::Contains("power of two"));
  CHECK_THROWS_WITH(make_grid(2, 16, -1.0), "period L must be positive");
}

TEST_CASE("forward/inverse round trip and sin coefficients") {
  const Grid g = make_grid(1, 32);
  const PhysicalField f = sample(g, [](const Eigen::VectorXd& x) { return std::sin(3 * x(0)); });
  const SpectralField c = forward(f);
  CHECK(std::abs(c.coeffs()(3, 0) - Complex(0, -0.5)) < 1e-14);
  CHECK(std::abs(c.coeffs()(g.index_of_mode(-3), 0) - Complex(0, 0.5)) < 1e-14);
  CHECK((inverse(c).values() - f.values()).abs().maxCoeff() < 1e-14);
}

TEST_CASE("lebesgue norms") {
  const Grid g = make_grid(1, 64);
  const PhysicalField s = sample(g, [](const Eigen::VectorXd& x) { return std::sin(x(0)); });
  CHECK(lebesgue_norm(s, 2) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(lebesgue_norm(s, kInfinity) == doctest::Approx(1.0).epsilon(1e-12));
  const Grid g3 = make_grid(3, 8, 3.0);
  const PhysicalField c = sample(g3, [](const Eigen::VectorXd&) { return -2.0; });
  CHECK(lebesgue_norm(c, 2) == doctest::Approx(2.0 * std::pow(3.0, 1.5)).epsilon(1e-13));
  CHECK_THROWS(lebesgue_norm(c, 0.5));
}

TEST_CASE("Parseval") {
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_grid(n, n == 3 ? 16 : 32, 5.0);
    const SpectralField f = random_field(g, Rank::scalar, 7 + n);
    const double lhs = std::pow(lebesgue_norm(f, 2), 2);
    const double rhs = std::pow(g.period(), n) * f.coeffs().abs2().sum();
    CHECK(std::abs(lhs - rhs) / rhs < 1e-10);
  }
}

TEST_CASE("multiplier linearity and Nyquist zeroing") {
  const Grid g = make_grid(2, 16);
  const SpectralField f = random_field(g, Rank::scalar, 1);
  const SpectralField h = random_field(g, Rank::scalar, 2);
  const Multiplier m = Multiplier::radial([](double r) { return Complex(std::exp(-r), r); }, 0.5);
  const Complex alpha(2.0, -1.0), beta(0.25, 0.0);
  const SpectralField lhs = apply_multiplier(alpha * f + beta * h, m);
  const SpectralField rhs = alpha * apply_multiplier(f, m) + beta * apply_multiplier(h, m);
  CHECK(max_abs(lhs.coeffs() - rhs.coeffs()) < 1e-14);
  CHECK(lhs.coeffs()(0, 0) == alpha * f.mean() * 0.5 + beta * h.mean() * 0.5);
  for (Eigen::Index i = 0; i < g.num_points(); ++i)
    if (g.nyquist_mask()(i)) CHECK(lhs.coeffs()(i, 0) == Complex(0.0));
}

TEST_CASE("vector identity: div curl + grad div = laplacian") {
  for (int n = 2; n <= 3; ++n) {
    const Grid g = make_grid(n, 16);
    const SpectralField v = random_field(g, Rank::vector, 11);
    const SpectralField lhs = div(curl(v)) + grad(div(v));
    const SpectralField rhs = laplacian(v);
    CHECK(max_abs(lhs.coeffs() - rhs.coeffs()) < 1e-12 * max_abs(rhs.coeffs()));
  }
}

TEST_CASE("analytic derivatives") {
  const Grid g = make_grid(2, 16);
  const SpectralField f =
      forward(sample(g, [](const Eigen::VectorXd& x) { return std::sin(2 * x(0)) * std::cos(x(1)); }));
  const PhysicalField d1 = inverse(partial(f, 0));
  const PhysicalField lap = inverse(laplacian(f));
  const PhysicalField lam = inverse(lambda(f, 2.0));
  double err = 0;
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const auto x = g.position(i);
    err = std::max(err, std::abs(d1.values()(i, 0) - 2 * std::cos(2 * x(0)) * std::cos(x(1))));
    err = std::max(err, std::abs(lap.values()(i, 0) + 5 * std::sin(2 * x(0)) * std::cos(x(1))));
    err = std::max(err, std::abs(lam.values()(i, 0) - 5 * std::sin(2 * x(0)) * std::cos(x(1))));
  }
  CHECK(err < 1e-12);
  CHECK_THROWS(grad(SpectralField(g, Rank::vector)));
}

TEST_CASE("dealiased products are exact for resolved trigonometric data") {
  const Grid g = make_grid(2, 16);
  auto fa = [](const Eigen::VectorXd& x) { return std::cos(3 * x(0)) + std::sin(3 * x(1)); };
  auto fb = [](const Eigen::VectorXd& x) { return std::sin(4 * x(0) - 2 * x(1)); };
  const SpectralField a = forward(sample(g, fa));
  const SpectralField b = forward(sample(g, fb));
  const PhysicalField p = inverse(multiply(a, b));
  double err = 0;
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const auto x = g.position(i);
    err = std::max(err, std::abs(p.values()(i, 0) - fa(x) * fb(x)));
  }
  CHECK(err < 1e-13);

  // v = (sin x2, sin x1) transports a = cos x1 into -sin x2 sin x1.
  SpectralField v(g, Rank::vector);
  v.component(0) = forward(sample(g, [](const Eigen::VectorXd& x) { return std::sin(x(1)); })).component(0);
  v.component(1) = forward(sample(g, [](const Eigen::VectorXd& x) { return std::sin(x(0)); })).component(0);
  const SpectralField c = forward(sample(g, [](const Eigen::VectorXd& x) { return std::cos(x(0)); }));
  const PhysicalField adv = inverse(advect(v, c));
  err = 0;
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const auto x = g.position(i);
    err = std::max(err, std::abs(adv.values()(i, 0) + std::sin(x(1)) * std::sin(x(0))));
  }
  CHECK(err < 1e-13);
}

TEST_CASE("SFLD1 round trip, golden bytes and errors") {
  const Grid g = make_grid(2, 8, 3.5);
  const SpectralField f = random_field(g, Rank::vector, 3);
  std::stringstream buf;
  write_field(buf, f);
  const SpectralField back = read_spectral(buf, g);
  CHECK((back.coeffs() == f.coeffs()).all());

  // Header bytes for a scalar physical field on n=1, N=8, L=2.
  const Grid g1 = make_grid(1, 8, 2.0);
  PhysicalField p(g1, Rank::scalar);
  p.values().setConstant(1.0);
  std::stringstream raw;
  write_field(raw, p);
  const std::string bytes = raw.str();
  const std::string header("SFLD1\0\x01\x00\x08\x00\x00\x00\x00\x00\x00\x00\x00\x00\x00\x40\x00", 21);
  CHECK(bytes.size() == 21 + 8 * 8);
  CHECK(bytes.substr(0, 21) == header);
  CHECK(bytes.substr(21, 8) == std::string("\x00\x00\x00\x00\x00\x00\xf0\x3f", 8));

  std::string corrupt = bytes;
  corrupt[0] = 'X';
  std::stringstream bad(corrupt);
  CHECK_THROWS_WITH(read_field(bad), "bad magic");
  std::stringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_WITH(read_field(cut), "truncated stream");
  std::stringstream other(bytes);
  CHECK_THROWS_WITH(read_spectral(other, make_grid(1, 16, 2.0)), "grid mismatch");
}
