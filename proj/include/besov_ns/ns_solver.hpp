#pragma once

#include "besov_ns/besov.hpp"
#include "besov_ns/etd.hpp"
#include "besov_ns/spectral_field.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace besov_ns {

/// Coefficients of the rescaled compressible system
///   d_t a + v.grad a + div v = -a div v
///   d_t v + v.grad v - A v + grad a = -L(a) A v - K(a) grad a
/// with A = mu Delta + (lambda + mu) grad div, pressure P(rho) = rho^gamma.
struct PhysicsParams {
  double mu_bar = 0.5;
  double lambda_bar = 0.0;
  double gamma = 1.4;
  double rho_bar = 1.0;
  double nu_bar = 1.0;        // lambda_bar + 2 mu_bar
  double varpi = 1.0;         // sqrt(P'(rho_bar))
  double time_scale = 1.0;    // t_rescaled = varpi^2 t
  double length_scale = 1.0;  // x_rescaled = varpi x

  /// Throws std::invalid_argument on non-elliptic coefficients.
  void validate() const;
};

/// From physical (rho_bar, mu, lambda, gamma). Throws std::invalid_argument
/// for rho_bar <= 0, P'(rho_bar) <= 0 or "non-elliptic Lamé coefficients".
PhysicsParams nondimensionalize(double rho_bar, double mu, double lambda, double gamma);

/// Physics with mu_bar, lambda_bar given directly in rescaled form.
PhysicsParams rescaled_physics(double mu_bar, double lambda_bar, double gamma);

struct HodgeParts {
  SpectralField d;      // Lambda^{-1} div v
  SpectralField Omega;  // Lambda^{-1} (d_j v_i - d_i v_j)
  Eigen::VectorXd mean_v;
};

HodgeParts hodge_split(const SpectralField& v);

/// v = -Lambda^{-1} grad d - Lambda^{-1} div Omega + mean_v. Throws
/// std::invalid_argument if d or Omega has a nonzero mean.
SpectralField hodge_reconstruct(const SpectralField& d, const SpectralField& Omega, const Eigen::VectorXd& mean_v);

struct SolverState {
  SpectralField a;
  SpectralField d;
  SpectralField Omega;
  Eigen::VectorXd mean_v;
  double t = 0.0;

  SpectralField velocity() const { return hodge_reconstruct(d, Omega, mean_v); }
};

SolverState make_state(const SpectralField& a, const SpectralField& v, double t = 0.0);

/// Nonlinear terms at a state.
struct NonlinearTerms {
  SpectralField F;          // -a div v
  SpectralField G;          // v.grad d - Lambda^{-1} div W
  SpectralField H;          // -Lambda^{-1} curl(v.grad v + L(a) A v)
  SpectralField transport_a;  // v.grad a
  SpectralField transport_d;  // v.grad d
  Eigen::VectorXd mean_accel; // -mean(W)
};

/// W = v.grad v + L(a) A v + K(a) grad a. Products and the compositions
/// K, L are evaluated on the padded grid. Throws std::domain_error "vacuum"
/// when min(1 + a) <= kVacuumFloor.
NonlinearTerms nonlinear_rhs(const SolverState& state, const PhysicsParams& params, bool dealias = true);

/// ETDRK2 stepper with cached coefficients for the last step size.
class Stepper {
 public:
  explicit Stepper(PhysicsParams params, bool dealias = true);

  /// One step of size h. Throws std::domain_error "vacuum" and
  /// std::runtime_error "blow-up detected at t=...".
  SolverState step(const SolverState& s, double h);

  const PhysicsParams& params() const { return params_; }

 private:
  const EtdTable& table(const Grid& g, double h);

  PhysicsParams params_;
  bool dealias_;
  std::unique_ptr<EtdTable> table_;
  Grid table_grid_;
};

SolverState step(const SolverState& s, const PhysicsParams& params, double dt, bool dealias = true);

struct SolverConfig {
  double dt = 1e-2;
  double T_end = 1.0;
  bool dealias = true;
  /// Shrink steps to 0.5 (L/N) / max|v| when needed.
  bool advective_limit = true;
  double cfl = 0.5;
  /// Exponent of the monitored hybrid norms; 0 selects 3.
  double p = 0.0;
  /// Low/high threshold of the monitored norms; nonpositive selects 2 / nu_bar.
  double R0 = 0.0;
  int monitor_stride = 1;
  int snapshot_stride = 0;  // 0 disables SFLD1 snapshots
  std::filesystem::path snapshot_dir;
  bool keep_states = false;

  void validate() const;
};

struct SolveResult {
  SolverState final_state;
  std::vector<SolverState> states;  // at monitor samples when keep_states
  NormSeries a_series;
  NormSeries d_series;
  NormSeries omega_series;
  std::vector<double> running_norm;  // E^{n/p} norm on [0, t_k]
  double initial_norm = 0.0;         // ||a0|| + ||d0|| + ||Omega0|| at (n/2 - 1, n/p (-1))
  double max_ratio = 0.0;            // max_k running_norm / initial_norm
  double mass_drift = 0.0;           // |mean a(T) - mean a(0)|
  double min_density = 0.0;          // min over samples of min(1 + a)
  int steps = 0;
  bool halted = false;
  std::string halt_reason;
  double p = 3.0;
  double R0 = 2.0;
};

/// Integrates to T_end, or until a vacuum or blow-up halts the run
/// (reported through `halted` and `halt_reason`).
SolveResult solve(const SolverState& initial, const PhysicsParams& params, const SolverConfig& config);

/// The running norm at every sample of the monitored series:
///   ||a||_{L~inf(n/2-1, s)} + ||a||_{L1(n/2+1, s)} + sum over d, Omega of
///   ||.||_{L~inf(n/2-1, s-1)} + ||.||_{L1(n/2+1, s+1)},  s = n/p.
double critical_norm(const NormSeries& a, const NormSeries& d, const NormSeries& omega, int n, double R0);

/// CSV columns t, j, a_l2, a_lp, d_l2, d_lp, running_norm.
void write_norm_history_csv(std::ostream& out, const SolveResult& result);

}  // namespace besov_ns
