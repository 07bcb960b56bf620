#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace besov_ns {

/// Parse or validation failure; the message carries the line number (or
/// the override text) when there is one.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"lp-check",     "besov-norm",          "bony-check",
                                              "probe-estimates", "green-decay",      "heat-decay",
                                              "oscillation-scaling", "linear-convection", "solve"};
  return kinds;
}

struct ExperimentConfig {
  // [grid]; 0 selects the experiment's default
  int n = 0;
  int N = 0;
  double L = 2.0 * std::numbers::pi;

  // [physics] in physical units; the solver rescales them
  double rho_bar = 1.0;
  double mu = 0.5;
  double lambda = 0.0;
  double gamma = 1.4;

  // [solver]
  double dt = 0.01;
  double T_end = 10.0;
  bool dealias = true;
  double cfl = 0.5;
  int monitor_stride = 10;
  int snapshot_stride = 0;
  double norm_p = 3.0;
  double norm_R0 = 0.0;  // 0: 2 / nu_bar

  // [experiment]
  std::string kind;
  std::uint64_t seed = 42;
  int samples = 100;
  // besov-norm
  double s = 0.5;
  double sigma = 0.5;
  double p = 3.0;
  double q = 2.0;
  double R0 = 4.0;
  // probe-estimates
  std::string probe = "all";
  // green-decay / heat-decay
  int ring_lo = 3;
  int ring_hi = 5;
  double decay_nu = 2.0;
  double t_start = 1.0;
  double t_stop = 5.0;
  int t_count = 9;
  // oscillation-scaling
  std::string oscillation = "scalar_modulated";
  int eps_k_min = 2;
  int eps_k_max = 5;
  double osc_R0 = 0.5;
  std::string osc_p = "4,8";
  // linear-convection
  double conv_s = 1.0;
  double conv_amplitude = 0.05;
  // solve
  double eta = 1e-3;
  double bound_M = 100.0;
};

/// INI text with sections [grid], [physics], [solver], [experiment];
/// '#' and ';' start comments. Unknown sections or keys, duplicate keys and
/// malformed values throw ConfigError with the line number.
ExperimentConfig parse_config(const std::string& text);

/// Applies "section.key=value" on top of a parsed config.
void apply_override(ExperimentConfig& config, const std::string& assignment);

/// Cross-field checks after all overrides (kind present and known, ranges).
void validate_config(const ExperimentConfig& config);

/// Fills grid defaults that depend on the kind (n = 1, N = 256 for
/// green-decay; N = 256 for oscillation-scaling; otherwise n = 2, N = 64).
ExperimentConfig resolve_defaults(ExperimentConfig config);

/// Comma-separated list of numbers; throws ConfigError naming `what`.
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

/// Every key as "section.key = value", in schema order.
std::vector<std::string> describe_config(const ExperimentConfig& config);

}  // namespace besov_ns
