#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besov_ns/differential.hpp"
#include "besov_ns/field_io.hpp"
#include "besov_ns/green_propagator.hpp"
#include "besov_ns/ns_solver.hpp"
#include "besov_ns/probes.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace besov_ns;

namespace {

double gap(const SpectralField& x, const SpectralField& y) { return (x.coeffs() - y.coeffs()).abs().maxCoeff(); }

template <typename Fn>
SpectralField scalar(const Grid& g, Fn fn) {
  return forward(sample(g, fn)).zero_nyquist();
}

template <typename F0, typename F1>
SpectralField vec2(const Grid& g, F0 f0, F1 f1) {
  PhysicalField p(g, Rank::vector);
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const Eigen::VectorXd x = g.position(i);
    p.values()(i, 0) = f0(x);
    p.values()(i, 1) = f1(x);
  }
  return forward(p).zero_nyquist();
}

SpectralField zero_vec(const Grid& g) { return SpectralField(g, Rank::vector); }

}  // namespace

TEST_CASE("nondimensionalize") {
  const PhysicsParams p = nondimensionalize(1.0, 0.5, 0.0, 1.0);
  CHECK(p.varpi == doctest::Approx(1.0));
  CHECK(p.nu_bar == doctest::Approx(1.0));
  const PhysicsParams q = nondimensionalize(2.0, 1.0, 0.5, 1.4);
  CHECK(q.mu_bar == doctest::Approx(0.5));
  CHECK(q.lambda_bar == doctest::Approx(0.25));
  CHECK(q.varpi == doctest::Approx(std::sqrt(1.4 * std::pow(2.0, 0.4))));
  CHECK_THROWS_WITH_AS(nondimensionalize(1.0, 1.0, -3.0, 1.4), doctest::Contains("non-elliptic"), std::invalid_argument);
  CHECK_THROWS_AS(nondimensionalize(0.0, 1.0, 0.0, 1.4), std::invalid_argument);
  CHECK_THROWS_AS(nondimensionalize(1.0, 1.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("hodge split and reconstruction") {
  const Grid g = make_grid(2, 32);
  const DyadicSystem sys = build_dyadic_system(g);

  SpectralField v = sample_random_field(sys, Rank::vector, 0.0, 7);
  v.coeffs()(0, 0) = 0.3;
  v.coeffs()(0, 1) = -0.2;
  const HodgeParts h = hodge_split(v);
  CHECK(h.mean_v(0) == doctest::Approx(0.3));
  CHECK(gap(hodge_reconstruct(h.d, h.Omega, h.mean_v), v) < 1e-12);
  // div and curl of the reconstruction reproduce Lambda d and Lambda Omega
  const SpectralField w = hodge_reconstruct(h.d, h.Omega, h.mean_v);
  CHECK(gap(div(w), lambda(h.d)) < 1e-10);
  CHECK(gap(curl(w), lambda(h.Omega)) < 1e-10);

  const SpectralField psi = scalar(g, [](const Eigen::VectorXd& x) { return std::sin(x(0)) * std::cos(2 * x(1)); });
  CHECK(hodge_split(grad(psi)).Omega.coeffs().abs().maxCoeff() < 1e-13);
  const SpectralField solenoidal = vec2(
      g, [](const Eigen::VectorXd& x) { return std::sin(x(1)); }, [](const Eigen::VectorXd& x) { return std::cos(x(0)); });
  CHECK(hodge_split(solenoidal).d.coeffs().abs().maxCoeff() < 1e-13);

  Eigen::VectorXd c(2);
  c << 1.5, -2.0;
  const SpectralField constant = hodge_reconstruct(SpectralField(g, Rank::scalar), SpectralField(g, Rank::matrix), c);
  CHECK(std::abs(constant.mean(0) - 1.5) < 1e-15);
  CHECK(constant.coeffs().bottomRows(g.num_points() - 1).abs().maxCoeff() == 0.0);

  SpectralField bad(g, Rank::scalar);
  bad.coeffs()(0, 0) = 1.0;
  CHECK_THROWS_AS(hodge_reconstruct(bad, SpectralField(g, Rank::matrix), c), std::invalid_argument);
}

TEST_CASE("nonlinear terms match hand-expanded products") {
  const Grid g = make_grid(2, 16);
  const double al = 0.3, be = 0.7;
  const PhysicsParams phys = rescaled_physics(0.5, 0.0, 2.0);

  SUBCASE("density flux terms") {
    const SpectralField a = scalar(g, [&](const Eigen::VectorXd& x) { return al * std::cos(x(0)); });
    const SpectralField v = vec2(
        g, [&](const Eigen::VectorXd& x) { return be * std::sin(x(0)); },
        [&](const Eigen::VectorXd& x) { return be * std::cos(x(1)); });
    const NonlinearTerms nl = nonlinear_rhs(make_state(a, v), phys);
    const SpectralField F = scalar(g, [&](const Eigen::VectorXd& x) {
      return -al * be * (0.5 + 0.5 * std::cos(2 * x(0)) - std::cos(x(0)) * std::sin(x(1)));
    });
    const SpectralField va = scalar(g, [&](const Eigen::VectorXd& x) { return -al * be * std::pow(std::sin(x(0)), 2); });
    CHECK(gap(nl.F, F) < 1e-12);
    CHECK(gap(nl.transport_a, va) < 1e-12);
  }
  SUBCASE("zero density, solenoidal shear") {
    const SpectralField v = vec2(
        g, [&](const Eigen::VectorXd& x) { return be * std::sin(x(1)); },
        [&](const Eigen::VectorXd& x) { return be * std::sin(x(0)); });
    const NonlinearTerms nl = nonlinear_rhs(make_state(SpectralField(g, Rank::scalar), v), phys);
    const SpectralField G = scalar(
        g, [&](const Eigen::VectorXd& x) { return -std::sqrt(2.0) * be * be * std::cos(x(0)) * std::cos(x(1)); });
    CHECK(gap(nl.G, G) < 1e-12);
    CHECK(nl.H.coeffs().abs().maxCoeff() < 1e-12);
    CHECK(nl.F.coeffs().abs().maxCoeff() < 1e-12);
    CHECK(nl.mean_accel.norm() < 1e-14);
  }
  SUBCASE("pressure term at rest") {
    const SpectralField a = scalar(g, [&](const Eigen::VectorXd& x) { return al * std::cos(x(0)); });
    // gamma = 2: K vanishes identically
    const NonlinearTerms flat = nonlinear_rhs(make_state(a, zero_vec(g)), phys);
    CHECK(flat.G.coeffs().abs().maxCoeff() < 1e-14);
    // gamma = 3: K(a) = a, K grad a = grad(a^2 / 2), G = Lambda(a^2 / 2)
    const NonlinearTerms cubic = nonlinear_rhs(make_state(a, zero_vec(g)), rescaled_physics(0.5, 0.0, 3.0));
    const SpectralField G = scalar(g, [&](const Eigen::VectorXd& x) { return 0.5 * al * al * std::cos(2 * x(0)); });
    CHECK(gap(cubic.G, G) < 1e-12);
    CHECK(cubic.H.coeffs().abs().maxCoeff() < 1e-14);
    CHECK(cubic.F.coeffs().abs().maxCoeff() < 1e-14);
  }
  SUBCASE("vacuum") {
    const SpectralField a = scalar(g, [](const Eigen::VectorXd& x) { return -0.9995 * std::cos(x(0)); });
    CHECK_THROWS_WITH_AS(nonlinear_rhs(make_state(a, zero_vec(g)), phys), "vacuum", std::domain_error);
  }
}

TEST_CASE("zero data stays zero") {
  const Grid g = make_grid(2, 16);
  SolverConfig cfg;
  cfg.dt = 0.05;
  cfg.T_end = 0.5;
  const SolveResult r = solve(make_state(SpectralField(g, Rank::scalar), zero_vec(g)), rescaled_physics(0.5, 0.0, 1.4), cfg);
  CHECK_FALSE(r.halted);
  CHECK(r.final_state.a.coeffs().abs().maxCoeff() == 0.0);
  CHECK(r.final_state.d.coeffs().abs().maxCoeff() == 0.0);
  CHECK(r.max_ratio == 0.0);
  for (double v : r.running_norm) CHECK(v == 0.0);
}

TEST_CASE("tiny amplitude follows the exact propagator") {
  const Grid g = make_grid(2, 16);
  const PhysicsParams phys = rescaled_physics(0.5, 0.0, 1.4);
  const double eps = 1e-8;
  const SpectralField a = scalar(g, [&](const Eigen::VectorXd& x) { return eps * std::cos(x(0) + 2 * x(1)); });
  const SpectralField v = vec2(
      g, [&](const Eigen::VectorXd& x) { return eps * std::sin(x(0)); }, [](const Eigen::VectorXd&) { return 0.0; });
  SolverState s = make_state(a, v);
  Stepper stepper(phys);
  for (int k = 0; k < 50; ++k) s = stepper.step(s, 0.02);
  const auto [ae, de] = propagate(a, make_state(a, v).d, 1.0, phys.nu_bar);
  const double scale = std::max(ae.coeffs().abs().maxCoeff(), de.coeffs().abs().maxCoeff());
  CHECK(gap(s.a, ae) / scale < 1e-6);
  CHECK(gap(s.d, de) / scale < 1e-6);
}

TEST_CASE("second order in the time step") {
  const Grid g = make_grid(2, 16);
  const PhysicsParams phys = rescaled_physics(0.5, 0.1, 1.4);
  const SpectralField a = scalar(g, [](const Eigen::VectorXd& x) { return 0.2 * std::cos(x(0)) * std::sin(x(1)); });
  const SpectralField v = vec2(
      g, [](const Eigen::VectorXd& x) { return 0.3 * std::sin(x(1)) + 0.1 * std::cos(x(0)); },
      [](const Eigen::VectorXd& x) { return 0.2 * std::cos(x(0) - x(1)); });
  const SolverState s0 = make_state(a, v);
  auto run = [&](double h) {
    Stepper stepper(phys);
    SolverState s = s0;
    const int steps = static_cast<int>(std::lround(0.5 / h));
    for (int k = 0; k < steps; ++k) s = stepper.step(s, h);
    return s;
  };
  const SolverState ref = run(0.5 / 256);
  double prev = 0;
  for (int m : {16, 32, 64}) {
    const SolverState s = run(0.5 / m);
    const double err = gap(s.a, ref.a) + gap(s.d, ref.d) + gap(s.Omega, ref.Omega);
    if (prev > 0) CHECK(std::log2(prev / err) > 1.9);
    prev = err;
  }
}

TEST_CASE("solve keeps mass, antisymmetry and writes artifacts") {
  const Grid g = make_grid(2, 32);
  const PhysicsParams phys = rescaled_physics(0.5, 0.0, 1.4);
  const SpectralField a = scalar(g, [](const Eigen::VectorXd& x) { return 0.1 + 0.05 * std::cos(x(0)) * std::cos(x(1)); });
  const SpectralField v = vec2(
      g, [](const Eigen::VectorXd& x) { return 0.05 * std::sin(x(1)); },
      [](const Eigen::VectorXd& x) { return 0.05 * std::sin(2 * x(0)); });
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "besov_ns_solve_test";
  std::filesystem::remove_all(dir);
  SolverConfig cfg;
  cfg.dt = 0.05;
  cfg.T_end = 1.0;
  cfg.monitor_stride = 4;
  cfg.snapshot_stride = 10;
  cfg.snapshot_dir = dir;
  const SolveResult r = solve(make_state(a, v), phys, cfg);
  REQUIRE_FALSE(r.halted);
  CHECK(r.steps == 20);
  CHECK(r.final_state.t == doctest::Approx(1.0));
  CHECK(r.mass_drift < 1e-12);
  CHECK(r.a_series.samples() == 6);
  CHECK(r.running_norm.front() == doctest::Approx(r.initial_norm));
  for (std::size_t k = 1; k < r.running_norm.size(); ++k) CHECK(r.running_norm[k] >= r.running_norm[k - 1]);
  CHECK(r.max_ratio >= 1.0);
  CHECK(r.max_ratio < 10.0);
  const double last = critical_norm(r.a_series, r.d_series, r.omega_series, 2, r.R0);
  CHECK(last == doctest::Approx(r.running_norm.back()).epsilon(1e-12));

  const SpectralField& W = r.final_state.Omega;
  CHECK((W.component(0, 1) + W.component(1, 0)).abs().maxCoeff() < 1e-15);
  CHECK(W.component(0, 0).abs().maxCoeff() < 1e-15);

  for (const char* name : {"0.a.sfld", "10.d.sfld", "20.omega.sfld"}) CHECK(std::filesystem::exists(dir / name));
  const SpectralField back = read_spectral(dir / "20.a.sfld", g);
  CHECK(gap(back, r.final_state.a) == 0.0);

  std::ostringstream csv;
  write_norm_history_csv(csv, r);
  CHECK(csv.str().rfind("t,j,a_l2,a_lp,d_l2,d_lp,running_norm\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("vacuum halts the run") {
  const Grid g = make_grid(1, 32);
  const SpectralField a = scalar(g, [](const Eigen::VectorXd& x) { return -0.98 * std::cos(x(0)); });
  const PhysicalField pv = sample(g, [](const Eigen::VectorXd& x) { return 2.0 * std::sin(x(0)); });
  const SpectralField v = forward(PhysicalField(g, Rank::vector, pv.values()));
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.T_end = 2.0;
  const SolveResult r = solve(make_state(a, v), rescaled_physics(0.05, 0.0, 1.4), cfg);
  CHECK(r.halted);
  CHECK(r.halt_reason.find("vacuum") != std::string::npos);
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.dt = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dt = 0.1;
  cfg.T_end = 0.01;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
