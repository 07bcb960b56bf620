#pragma once

#include "besov_ns/besov.hpp"
#include "besov_ns/spectral_field.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace besov_ns {

/// Time-dependent prescribed field (velocity or forcing).
using FieldOfTime = std::function<SpectralField(double)>;

struct LinearConvectionConfig {
  double dt = 1e-2;
  double T_end = 1.0;
  double nu_bar = 1.0;
  double s = 1.0;       // regularity index of the energy space
  double p = 3.0;
  double R0 = 0.0;      // nonpositive selects 2 / nu_bar
  int monitor_stride = 1;
  bool dealias = true;

  void validate() const;
};

/// Throws std::invalid_argument naming the violated bound unless
/// 2 <= p < 2n, p <= 4 (and p <= 2n/(n-2) for n > 2) and
/// 1 - n/p < s <= 1 + 2n/p - n/2.
void check_convection_admissible(int n, double s, double p);

struct LinearConvectionReport {
  NormSeries a_series, d_series, v_series, F_series, G_series;
  std::vector<double> times;
  std::vector<double> lhs;        // ||(a, d)|| in the energy space on [0, t]
  std::vector<double> rhs;        // e^{V} {E0 + (V + sqrt V) lhs + forcing}, without C
  std::vector<double> vbar;       // V(t)
  double initial_norm = 0.0;      // E0
  double constant = 0.0;          // max_t lhs / rhs
  double final_ratio = 0.0;       // lhs / rhs at T
  double s = 1.0, p = 3.0, R0 = 2.0;
  int steps = 0;
  SpectralField a_final, d_final;
};

/// Integrates
///   d_t a + Lambda d = -v.grad a + F
///   d_t d - nu Delta d - Lambda a = -v.grad d + G
/// by ETDRK2 with the exact Green matrix. F and G may be empty (zero).
LinearConvectionReport linear_convection_solve(const SpectralField& a0, const SpectralField& d0, const FieldOfTime& v,
                                               const FieldOfTime& F, const FieldOfTime& G,
                                               const LinearConvectionConfig& config);

/// CSV columns t, lhs, rhs, vbar, ratio.
void write_convection_csv(std::ostream& out, const LinearConvectionReport& report);

}  // namespace besov_ns
