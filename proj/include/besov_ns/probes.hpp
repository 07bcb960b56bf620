#pragma once

#include "besov_ns/besov.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace besov_ns {

// Empirical constants for the hybrid-Besov product, paraproduct, remainder,
// commutator and composition estimates. Every probe uses static fields, so
// time norms reduce to the hybrid norms, and the dyadic sequence c(j) of a
// blockwise bound is eliminated by summing LHS_j / weight_j over the blocks.

enum class ProbeKind { product_a, product_b, para_high, remainder, commutator, composition };

const char* to_string(ProbeKind kind);
/// Throws std::invalid_argument for unknown names.
ProbeKind probe_kind_from_string(const std::string& name);

struct ProbeParams {
  double s = 0.5;
  double sigma = 0.5;
  double t = 0.5;
  double tau = 0.5;
  double p = 3.0;
  double R0 = 4.0;
  /// Extra high-frequency regularity of g in the low-frequency product bound.
  double gamma = 0.0;
  /// Sup-norm of the sampled field in the composition probe.
  double amplitude = 0.5;
  /// "L" for a/(1+a) or "K" for (1+a)^{gamma_adiabatic-2} - 1.
  std::string composition = "L";
  double gamma_adiabatic = 1.4;
};

/// Throws std::invalid_argument naming the first violated constraint,
/// e.g. "requires s+t > 0".
void check_admissible(ProbeKind kind, const ProbeParams& params, int n);

struct ProbeInputs {
  SpectralField f;  // transporting vector field for the commutator probe
  SpectralField g;  // unused by the composition probe
};

/// Random field with blockwise amplitude 2^{-js} c(j): per-mode complex
/// Gaussian coefficients, Hermitian-symmetrized, mean and Nyquist free,
/// blocks j_min + 1 .. j_max - 1, c(j) uniform random and normalized to sum 1.
SpectralField sample_random_field(const DyadicSystem& sys, Rank rank, double s, std::uint64_t seed);

ProbeInputs sample_probe_inputs(const DyadicSystem& sys, ProbeKind kind, const ProbeParams& params,
                                std::uint64_t seed);

struct ProbeReport {
  ProbeKind kind = ProbeKind::product_a;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // right-hand side without the constant
  double ratio = 0.0;
};

ProbeReport estimate_ratio_probe(const DyadicSystem& sys, ProbeKind kind, const ProbeInputs& inputs,
                                 const ProbeParams& params);

struct ProbeBatch {
  ProbeKind kind = ProbeKind::product_a;
  ProbeParams params;
  int grid_size = 0;
  std::vector<ProbeReport> reports;
  double max_ratio = 0.0;  // the empirical constant
};

ProbeBatch run_probe_batch(const DyadicSystem& sys, ProbeKind kind, const ProbeParams& params, int samples = 100,
                           std::uint64_t first_seed = 1);

/// CSV columns kind, s, sigma, t, tau, p, R0, N, seed, lhs, rhs, ratio.
void write_probe_csv(std::ostream& out, const ProbeBatch& batch, bool header = true);

}  // namespace besov_ns
