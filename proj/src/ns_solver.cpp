#include "besov_ns/ns_solver.hpp"

#include "besov_ns/differential.hpp"
#include "besov_ns/field_io.hpp"
#include "besov_ns/paraproduct.hpp"
#include "besov_ns/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace besov_ns {

void PhysicsParams::validate() const {
  if (!(mu_bar > 0.0) || !(lambda_bar + 2.0 * mu_bar > 0.0))
    throw std::invalid_argument("non-elliptic Lamé coefficients (need mu > 0 and lambda + 2 mu > 0)");
  if (!(gamma > 0.0)) throw std::invalid_argument("pressure exponent gamma must be positive");
}

PhysicsParams nondimensionalize(double rho_bar, double mu, double lambda, double gamma) {
  if (!(rho_bar > 0.0)) throw std::invalid_argument("reference density must be positive");
  if (!(mu > 0.0) || !(lambda + 2.0 * mu > 0.0))
    throw std::invalid_argument("non-elliptic Lamé coefficients (need mu > 0 and lambda + 2 mu > 0)");
  const double dP = gamma * std::pow(rho_bar, gamma - 1.0);
  if (!(dP > 0.0)) throw std::invalid_argument("pressure law must satisfy P'(rho_bar) > 0");
  PhysicsParams p;
  p.rho_bar = rho_bar;
  p.gamma = gamma;
  p.mu_bar = mu / rho_bar;
  p.lambda_bar = lambda / rho_bar;
  p.nu_bar = p.lambda_bar + 2.0 * p.mu_bar;
  p.varpi = std::sqrt(dP);
  p.time_scale = dP;
  p.length_scale = p.varpi;
  return p;
}

PhysicsParams rescaled_physics(double mu_bar, double lambda_bar, double gamma) {
  PhysicsParams p;
  p.mu_bar = mu_bar;
  p.lambda_bar = lambda_bar;
  p.gamma = gamma;
  p.nu_bar = lambda_bar + 2.0 * mu_bar;
  p.validate();
  return p;
}

HodgeParts hodge_split(const SpectralField& v) {
  if (v.rank() != Rank::vector) throw std::invalid_argument("hodge_split: expected a vector field");
  HodgeParts out;
  out.d = lambda(div(v), -1.0);
  out.Omega = lambda(curl(v), -1.0);
  out.mean_v.resize(v.components());
  for (int c = 0; c < v.components(); ++c) out.mean_v(c) = v.mean(c).real();
  return out;
}

SpectralField hodge_reconstruct(const SpectralField& d, const SpectralField& Omega, const Eigen::VectorXd& mean_v) {
  const Grid& g = d.grid();
  if (d.rank() != Rank::scalar || Omega.rank() != Rank::matrix)
    throw std::invalid_argument("hodge_reconstruct: expected scalar d and matrix Omega");
  if (mean_v.size() != g.dim()) throw std::invalid_argument("hodge_reconstruct: mean velocity has wrong size");
  constexpr double tol = 1e-12;
  if (std::abs(d.mean()) > tol) throw std::invalid_argument("hodge_reconstruct: d must have zero mean");
  for (int c = 0; c < Omega.components(); ++c)
    if (std::abs(Omega.mean(c)) > tol) throw std::invalid_argument("hodge_reconstruct: Omega must have zero mean");
  SpectralField v = -lambda(grad(d) + div(Omega), -1.0);
  for (int c = 0; c < g.dim(); ++c) v.coeffs()(0, c) = mean_v(c);
  return v;
}

SolverState make_state(const SpectralField& a, const SpectralField& v, double t) {
  if (a.rank() != Rank::scalar) throw std::invalid_argument("make_state: density perturbation must be scalar");
  if (a.grid() != v.grid()) throw std::invalid_argument("grid mismatch");
  HodgeParts h = hodge_split(v);
  SolverState s;
  s.a = a;
  s.a.zero_nyquist();
  s.d = std::move(h.d);
  s.Omega = std::move(h.Omega);
  s.mean_v = std::move(h.mean_v);
  s.t = t;
  return s;
}

namespace {

// Sum_j w_j * d_j f on the padded grid.
Eigen::ArrayXXd padded_transport(const PaddedSamples& pv, const SpectralField& f, bool dealias) {
  Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(pv.values.rows(), f.components());
  for (int j = 0; j < f.grid().dim(); ++j)
    acc += to_padded(partial(f, j), dealias).values.colwise() * pv.values.col(j);
  return acc;
}

PaddedSamples like(const PaddedSamples& ref, Rank rank, Eigen::ArrayXXd values) {
  return PaddedSamples{ref.grid, rank, ref.padded_size, std::move(values)};
}

}  // namespace

NonlinearTerms nonlinear_rhs(const SolverState& state, const PhysicsParams& params, bool dealias) {
  const SpectralField v = state.velocity();
  const PaddedSamples pa = to_padded(state.a, dealias);
  const PaddedSamples pv = to_padded(v, dealias);

  const Eigen::ArrayXd rho = 1.0 + pa.values.col(0);
  if (rho.minCoeff() <= kVacuumFloor) throw std::domain_error("vacuum");
  const Eigen::ArrayXd Lval = pa.values.col(0) / rho;
  const Eigen::ArrayXd Kval = rho.pow(params.gamma - 2.0) - 1.0;

  const SpectralField divv = div(v);
  const SpectralField Av = params.mu_bar * laplacian(v) + (params.lambda_bar + params.mu_bar) * grad(divv);

  const Eigen::ArrayXXd vgradv = padded_transport(pv, v, dealias);
  Eigen::ArrayXXd momentum = vgradv + to_padded(Av, dealias).values.colwise() * Lval;
  const Eigen::ArrayXXd pressure = to_padded(grad(state.a), dealias).values.colwise() * Kval;

  NonlinearTerms out;
  out.F = -from_padded(like(pa, Rank::scalar, pa.values * to_padded(divv, dealias).values));
  out.transport_a = from_padded(like(pa, Rank::scalar, padded_transport(pv, state.a, dealias)));
  out.transport_d = from_padded(like(pa, Rank::scalar, padded_transport(pv, state.d, dealias)));

  const SpectralField Wnl = from_padded(like(pv, Rank::vector, momentum));
  const SpectralField W = Wnl + from_padded(like(pv, Rank::vector, pressure));
  out.G = out.transport_d - lambda(div(W), -1.0);
  out.H = -lambda(curl(Wnl), -1.0);
  out.mean_accel.resize(v.components());
  for (int c = 0; c < v.components(); ++c) out.mean_accel(c) = -W.mean(c).real();
  return out;
}

Stepper::Stepper(PhysicsParams params, bool dealias) : params_(params), dealias_(dealias) { params_.validate(); }

const EtdTable& Stepper::table(const Grid& g, double h) {
  if (!table_ || table_->h() != h || !(table_grid_ == g)) {
    table_ = std::make_unique<EtdTable>(g, h, params_.nu_bar, params_.mu_bar);
    table_grid_ = g;
  }
  return *table_;
}

namespace {

struct Sources {
  SpectralField Na, Nd, NOmega;
  Eigen::VectorXd mean_accel;
};

Sources sources(const SolverState& s, const PhysicsParams& params, bool dealias) {
  NonlinearTerms nl = nonlinear_rhs(s, params, dealias);
  return {nl.F - nl.transport_a, nl.G - nl.transport_d, std::move(nl.H), std::move(nl.mean_accel)};
}

// out = E u + P1 n1 (+ P2 (n2 - n1) when n2 is given), per frequency.
void advance(const EtdTable& tab, const SolverState& u, const Sources& n1, const Sources* n2, SolverState& out) {
  const Grid& g = u.a.grid();
  out.a = SpectralField::zeros_like(u.a);
  out.d = SpectralField::zeros_like(u.d);
  out.Omega = SpectralField::zeros_like(u.Omega);
  const int nc = u.Omega.components();
  for (Eigen::Index i = 0; i < g.num_points(); ++i) {
    const EtdTable::Pair& P = tab.pair(i);
    const Eigen::Vector2cd x(u.a.coeffs()(i, 0), u.d.coeffs()(i, 0));
    const Eigen::Vector2cd f1(n1.Na.coeffs()(i, 0), n1.Nd.coeffs()(i, 0));
    Eigen::Vector2cd y = P.E.cast<Complex>() * x + P.P1.cast<Complex>() * f1;
    if (n2) {
      const Eigen::Vector2cd f2(n2->Na.coeffs()(i, 0), n2->Nd.coeffs()(i, 0));
      y += P.P2.cast<Complex>() * (f2 - f1);
    }
    out.a.coeffs()(i, 0) = y(0);
    out.d.coeffs()(i, 0) = y(1);

    const EtdTable::Heat& H = tab.heat(i);
    for (int c = 0; c < nc; ++c) {
      Complex w = H.E * u.Omega.coeffs()(i, c) + H.P1 * n1.NOmega.coeffs()(i, c);
      if (n2) w += H.P2 * (n2->NOmega.coeffs()(i, c) - n1.NOmega.coeffs()(i, c));
      out.Omega.coeffs()(i, c) = w;
    }
  }
  out.a.zero_nyquist();
  out.d.zero_nyquist();
  out.Omega.zero_nyquist();
}

bool finite(const SolverState& s) {
  return s.a.coeffs().allFinite() && s.d.coeffs().allFinite() && s.Omega.coeffs().allFinite() &&
         s.mean_v.allFinite();
}

}  // namespace

SolverState Stepper::step(const SolverState& s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("time step must be positive");
  const EtdTable& tab = table(s.a.grid(), h);

  const Sources n1 = sources(s, params_, dealias_);
  SolverState mid;
  advance(tab, s, n1, nullptr, mid);
  mid.mean_v = s.mean_v + h * n1.mean_accel;
  mid.t = s.t + h;

  const Sources n2 = sources(mid, params_, dealias_);
  SolverState out;
  advance(tab, s, n1, &n2, out);
  out.mean_v = s.mean_v + 0.5 * h * (n1.mean_accel + n2.mean_accel);
  out.t = s.t + h;
  if (!finite(out)) {
    std::ostringstream msg;
    msg << "blow-up detected at t=" << out.t;
    throw std::runtime_error(msg.str());
  }
  return out;
}

SolverState step(const SolverState& s, const PhysicsParams& params, double dt, bool dealias) {
  Stepper stepper(params, dealias);
  return stepper.step(s, dt);
}

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(T_end >= dt)) throw std::invalid_argument("T_end must be at least dt");
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl factor must be positive");
  if (monitor_stride < 1) throw std::invalid_argument("monitor_stride must be at least 1");
  if (snapshot_stride < 0) throw std::invalid_argument("snapshot_stride must be nonnegative");
  if (p != 0.0 && p < 2.0) throw std::invalid_argument("monitored exponent p must be at least 2");
}

namespace {

struct Pieces {
  HybridParams sup, l1;
};

// Weights of the monitored norm: a uses (n/2 -+ 1, n/p), d and Omega use
// (n/2 - 1, n/p - 1) in time sup and (n/2 + 1, n/p + 1) in time L^1.
Pieces pieces(int n, double p, double R0, bool density) {
  const double s = n / p;
  const double h = 0.5 * n;
  if (density) return {{h - 1.0, s, p, R0}, {h + 1.0, s, p, R0}};
  return {{h - 1.0, s - 1.0, p, R0}, {h + 1.0, s + 1.0, p, R0}};
}

// Running per-block sup and trapezoid integral of one monitored field.
struct RunningBlocks {
  BlockNorms sup, integral, last;
  double t_last = 0.0;
  bool started = false;

  void add(double t, const BlockNorms& bn) {
    if (!started) {
      sup = bn;
      integral = bn;
      integral.l2.setZero();
      integral.lp.setZero();
      started = true;
    } else {
      const double w = 0.5 * (t - t_last);
      integral.l2 += w * (bn.l2 + last.l2);
      integral.lp += w * (bn.lp + last.lp);
      sup.l2 = sup.l2.max(bn.l2);
      sup.lp = sup.lp.max(bn.lp);
    }
    last = bn;
    t_last = t;
  }

  double value(const Pieces& pc) const { return hybrid_norm(sup, pc.sup) + hybrid_norm(integral, pc.l1); }
};

}  // namespace

double critical_norm(const NormSeries& a, const NormSeries& d, const NormSeries& omega, int n, double R0) {
  const double p = a.p();
  const Pieces pa = pieces(n, p, R0, true);
  const Pieces pd = pieces(n, p, R0, false);
  const double inf = std::numeric_limits<double>::infinity();
  double total = chemin_lerner_norm(a, inf, pa.sup) + chemin_lerner_norm(a, 1.0, pa.l1);
  for (const NormSeries* s : {&d, &omega})
    total += chemin_lerner_norm(*s, inf, pd.sup) + chemin_lerner_norm(*s, 1.0, pd.l1);
  return total;
}

SolveResult solve(const SolverState& initial, const PhysicsParams& params, const SolverConfig& config) {
  config.validate();
  params.validate();
  const Grid& g = initial.a.grid();
  const int n = g.dim();
  const DyadicSystem sys = build_dyadic_system(g);

  SolveResult res;
  res.p = config.p > 0.0 ? config.p : 3.0;
  res.R0 = config.R0 > 0.0 ? config.R0 : 2.0 / params.nu_bar;
  res.a_series = NormSeries(sys.j_values(), res.p, "a");
  res.d_series = NormSeries(sys.j_values(), res.p, "d");
  res.omega_series = NormSeries(sys.j_values(), res.p, "omega");

  const Pieces pa = pieces(n, res.p, res.R0, true);
  const Pieces pd = pieces(n, res.p, res.R0, false);
  RunningBlocks ra, rd, ro;
  res.min_density = std::numeric_limits<double>::infinity();

  auto monitor = [&](const SolverState& s) {
    const BlockNorms ba = block_norms(sys, s.a, res.p);
    const BlockNorms bd = block_norms(sys, s.d, res.p);
    const BlockNorms bo = block_norms(sys, s.Omega, res.p);
    res.a_series.append(s.t, ba);
    res.d_series.append(s.t, bd);
    res.omega_series.append(s.t, bo);
    ra.add(s.t, ba);
    rd.add(s.t, bd);
    ro.add(s.t, bo);
    res.running_norm.push_back(ra.value(pa) + rd.value(pd) + ro.value(pd));
    res.min_density = std::min(res.min_density, 1.0 + to_padded(s.a, config.dealias).values.minCoeff());
    if (config.keep_states) res.states.push_back(s);
  };
  auto snapshot = [&](const SolverState& s, int k) {
    if (config.snapshot_stride <= 0 || k % config.snapshot_stride != 0) return;
    std::filesystem::create_directories(config.snapshot_dir);
    const std::string stem = std::to_string(k);
    write_field(config.snapshot_dir / (stem + ".a.sfld"), s.a);
    write_field(config.snapshot_dir / (stem + ".d.sfld"), s.d);
    write_field(config.snapshot_dir / (stem + ".omega.sfld"), s.Omega);
  };

  res.initial_norm = hybrid_norm(block_norms(sys, initial.a, res.p), pa.sup) +
                     hybrid_norm(block_norms(sys, initial.d, res.p), pd.sup) +
                     hybrid_norm(block_norms(sys, initial.Omega, res.p), pd.sup);

  Stepper stepper(params, config.dealias);
  SolverState state = initial;
  monitor(state);
  snapshot(state, 0);
  bool monitored_last = true;
  const double t_end = initial.t + config.T_end;
  const double cell = g.spacing();

  try {
    while (t_end - state.t > 1e-12 * config.T_end) {
      double h = config.dt;
      if (config.advective_limit) {
        const double vmax = inverse(state.velocity()).magnitude().maxCoeff();
        const double limit = config.cfl * cell / std::max(vmax, 1e-300);
        // Halve rather than rescale so the coefficient table is reused.
        while (h > limit) h *= 0.5;
      }
      h = std::min(h, t_end - state.t);
      state = stepper.step(state, h);
      ++res.steps;
      monitored_last = false;
      if (res.steps % config.monitor_stride == 0) {
        monitor(state);
        monitored_last = true;
      }
      snapshot(state, res.steps);
    }
  } catch (const std::domain_error& e) {
    res.halted = true;
    res.halt_reason = std::string(e.what()) + " at t=" + std::to_string(state.t);
  } catch (const std::runtime_error& e) {
    res.halted = true;
    res.halt_reason = e.what();
  }
  if (!monitored_last) monitor(state);

  res.final_state = state;
  res.mass_drift = std::abs(state.a.mean().real() - initial.a.mean().real());
  res.max_ratio = 0.0;
  if (res.initial_norm > 0.0)
    for (double v : res.running_norm) res.max_ratio = std::max(res.max_ratio, v / res.initial_norm);
  return res;
}

void write_norm_history_csv(std::ostream& out, const SolveResult& result) {
  out << "t,j,a_l2,a_lp,d_l2,d_lp,running_norm\n";
  const Eigen::ArrayXXd al2 = result.a_series.l2(), alp = result.a_series.lp();
  const Eigen::ArrayXXd dl2 = result.d_series.l2(), dlp = result.d_series.lp();
  const auto& times = result.a_series.times();
  const auto& js = result.a_series.j();
  out.precision(12);
  for (std::size_t k = 0; k < times.size(); ++k)
    for (std::size_t b = 0; b < js.size(); ++b)
      out << times[k] << ',' << js[b] << ',' << al2(k, b) << ',' << alp(k, b) << ',' << dl2(k, b) << ','
          << dlp(k, b) << ',' << result.running_norm[k] << '\n';
}

}  // namespace besov_ns
