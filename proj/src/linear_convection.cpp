#include "besov_ns/linear_convection.hpp"

#include "besov_ns/etd.hpp"
#include "besov_ns/products.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace besov_ns {

void LinearConvectionConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(T_end >= dt)) throw std::invalid_argument("T_end must be at least dt");
  if (!(nu_bar > 0.0)) throw std::invalid_argument("nu_bar must be positive");
  if (monitor_stride < 1) throw std::invalid_argument("monitor_stride must be at least 1");
}

void check_convection_admissible(int n, double s, double p) {
  std::ostringstream msg;
  if (!(p >= 2.0 && p < 2.0 * n)) {
    msg << "requires 2 <= p < 2n (got p=" << p << ")";
    throw std::invalid_argument(msg.str());
  }
  const double pmax = n > 2 ? std::min(4.0, 2.0 * n / (n - 2.0)) : 4.0;
  if (p > pmax) {
    msg << "requires p <= " << pmax << " (got p=" << p << ")";
    throw std::invalid_argument(msg.str());
  }
  const double lo = 1.0 - n / p;
  const double hi = 1.0 + 2.0 * n / p - 0.5 * n;
  constexpr double tol = 1e-12;
  if (!(s > lo + tol && s <= hi + tol)) {
    msg << "requires " << lo << " < s <= " << hi << " (1 - n/p < s <= 1 + 2n/p - n/2, got s=" << s << ")";
    throw std::invalid_argument(msg.str());
  }
}

namespace {

struct Running {
  BlockNorms sup, integral, last;
  double t_last = 0.0;
  bool started = false;

  void add(double t, const BlockNorms& bn) {
    if (!started) {
      sup = integral = bn;
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
};

SpectralField or_zero(const FieldOfTime& f, double t, const Grid& g) {
  if (!f) return SpectralField(g, Rank::scalar);
  SpectralField out = f(t);
  if (out.grid() != g || out.rank() != Rank::scalar) throw std::invalid_argument("forcing must be a scalar field on the solver grid");
  return out;
}

}  // namespace

LinearConvectionReport linear_convection_solve(const SpectralField& a0, const SpectralField& d0, const FieldOfTime& v,
                                               const FieldOfTime& F, const FieldOfTime& G,
                                               const LinearConvectionConfig& config) {
  config.validate();
  const Grid& g = a0.grid();
  const int n = g.dim();
  check_convection_admissible(n, config.s, config.p);
  if (!v) throw std::invalid_argument("a prescribed velocity is required");
  if (d0.grid() != g) throw std::invalid_argument("grid mismatch");

  const DyadicSystem sys = build_dyadic_system(g);
  LinearConvectionReport rep;
  rep.s = config.s;
  rep.p = config.p;
  rep.R0 = config.R0 > 0.0 ? config.R0 : 2.0 / config.nu_bar;
  const double p = rep.p, s = rep.s, R0 = rep.R0;
  const double sp = s - n / p + 0.5 * n;
  const HybridParams a_sup{sp - 1.0, s, p, R0}, a_l1{sp + 1.0, s, p, R0};
  const HybridParams d_sup{sp - 1.0, s - 1.0, p, R0}, d_l1{sp + 1.0, s + 1.0, p, R0};
  const HybridParams v_sup{0.5 * n - 1.0, n / p - 1.0, p, R0}, v_l1{0.5 * n + 1.0, n / p + 1.0, p, R0};
  for (auto* series : {&rep.a_series, &rep.d_series, &rep.v_series, &rep.F_series, &rep.G_series})
    *series = NormSeries(sys.j_values(), p);

  Running ra, rd, rv, rF, rG;
  auto monitor = [&](double t, const SpectralField& a, const SpectralField& d, const SpectralField& vt,
                     const SpectralField& Ft, const SpectralField& Gt) {
    const BlockNorms ba = block_norms(sys, a, p), bd = block_norms(sys, d, p), bv = block_norms(sys, vt, p);
    const BlockNorms bF = block_norms(sys, Ft, p), bG = block_norms(sys, Gt, p);
    rep.a_series.append(t, ba);
    rep.d_series.append(t, bd);
    rep.v_series.append(t, bv);
    rep.F_series.append(t, bF);
    rep.G_series.append(t, bG);
    ra.add(t, ba);
    rd.add(t, bd);
    rv.add(t, bv);
    rF.add(t, bF);
    rG.add(t, bG);
    const double lhs = hybrid_norm(ra.sup, a_sup) + hybrid_norm(ra.integral, a_l1) + hybrid_norm(rd.sup, d_sup) +
                       hybrid_norm(rd.integral, d_l1);
    const double V = hybrid_norm(rv.integral, v_l1) + hybrid_norm(rv.sup, v_sup);
    const HybridParams F_l1{sp - 1.0, s, p, R0}, G_l1{sp - 1.0, s - 1.0, p, R0};
    const double forcing = hybrid_norm(rF.integral, F_l1) + hybrid_norm(rG.integral, G_l1);
    const double rhs = std::exp(V) * (rep.initial_norm + (V + std::sqrt(V)) * lhs + forcing);
    rep.times.push_back(t);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.vbar.push_back(V);
    if (rhs > 0.0) rep.constant = std::max(rep.constant, lhs / rhs);
  };

  rep.initial_norm = hybrid_norm(sys, a0, a_sup) + hybrid_norm(sys, d0, d_sup);

  const EtdTable tab(g, config.dt, config.nu_bar, 0.5 * config.nu_bar);
  std::unique_ptr<EtdTable> tail;
  SpectralField a = a0, d = d0;
  a.zero_nyquist();
  d.zero_nyquist();
  double t = 0.0;

  auto sources = [&](double tt, const SpectralField& aa, const SpectralField& dd, SpectralField& vt, SpectralField& Ft,
                     SpectralField& Gt) {
    vt = v(tt);
    if (vt.grid() != g || vt.rank() != Rank::vector) throw std::invalid_argument("velocity must be a vector field on the solver grid");
    Ft = or_zero(F, tt, g);
    Gt = or_zero(G, tt, g);
    return std::make_pair(Ft - advect(vt, aa, config.dealias), Gt - advect(vt, dd, config.dealias));
  };

  SpectralField vt, Ft, Gt;
  auto n1 = sources(t, a, d, vt, Ft, Gt);
  monitor(t, a, d, vt, Ft, Gt);
  bool monitored_last = true;

  while (config.T_end - t > 1e-12 * config.T_end) {
    double h = std::min(config.dt, config.T_end - t);
    const EtdTable* T = &tab;
    if (h != config.dt) {
      tail = std::make_unique<EtdTable>(g, h, config.nu_bar, 0.5 * config.nu_bar);
      T = tail.get();
    }
    auto apply = [&](const std::pair<SpectralField, SpectralField>* n2, SpectralField& oa, SpectralField& od) {
      oa = SpectralField::zeros_like(a);
      od = SpectralField::zeros_like(d);
      for (Eigen::Index i = 0; i < g.num_points(); ++i) {
        const EtdTable::Pair& P = T->pair(i);
        const Eigen::Vector2cd x(a.coeffs()(i, 0), d.coeffs()(i, 0));
        const Eigen::Vector2cd f1(n1.first.coeffs()(i, 0), n1.second.coeffs()(i, 0));
        Eigen::Vector2cd y = P.E.cast<Complex>() * x + P.P1.cast<Complex>() * f1;
        if (n2) y += P.P2.cast<Complex>() * (Eigen::Vector2cd(n2->first.coeffs()(i, 0), n2->second.coeffs()(i, 0)) - f1);
        oa.coeffs()(i, 0) = y(0);
        od.coeffs()(i, 0) = y(1);
      }
      oa.zero_nyquist();
      od.zero_nyquist();
    };
    SpectralField am, dm;
    apply(nullptr, am, dm);
    const auto n2 = sources(t + h, am, dm, vt, Ft, Gt);
    SpectralField an, dn;
    apply(&n2, an, dn);
    a = std::move(an);
    d = std::move(dn);
    t += h;
    ++rep.steps;
    if (!a.coeffs().allFinite() || !d.coeffs().allFinite()) {
      std::ostringstream msg;
      msg << "blow-up detected at t=" << t;
      throw std::runtime_error(msg.str());
    }
    n1 = sources(t, a, d, vt, Ft, Gt);
    monitored_last = false;
    if (rep.steps % config.monitor_stride == 0) {
      monitor(t, a, d, vt, Ft, Gt);
      monitored_last = true;
    }
  }
  if (!monitored_last) monitor(t, a, d, vt, Ft, Gt);
  rep.final_ratio = rep.rhs.back() > 0.0 ? rep.lhs.back() / rep.rhs.back() : 0.0;
  rep.a_final = a;
  rep.d_final = d;
  return rep;
}

void write_convection_csv(std::ostream& out, const LinearConvectionReport& report) {
  out << "t,lhs,rhs,vbar,ratio\n";
  out.precision(12);
  for (std::size_t k = 0; k < report.times.size(); ++k)
    out << report.times[k] << ',' << report.lhs[k] << ',' << report.rhs[k] << ',' << report.vbar[k] << ','
        << (report.rhs[k] > 0 ? report.lhs[k] / report.rhs[k] : 0.0) << '\n';
}

}  // namespace besov_ns
