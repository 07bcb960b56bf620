#pragma once

#include "besov_ns/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace besov_ns {

struct Check {
  std::string name;
  double value = 0.0;
  std::string threshold;  // human-readable acceptance rule, e.g. "< 1e-10"
  bool pass = false;
};

struct ExperimentResult {
  std::string kind;
  ExperimentConfig config;  // with kind defaults resolved
  std::vector<std::pair<std::string, double>> measurements;
  std::vector<Check> checks;
  std::vector<std::string> artifacts;  // paths relative to the output directory
  std::vector<std::string> notes;

  bool passed() const;
};

/// Runs one experiment, writing CSVs (and SFLD1 snapshots for solve) under
/// out_dir. Module errors propagate with the experiment name prefixed.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

void write_report(std::ostream& out, const ExperimentResult& result);

/// run_experiment + report.txt; returns 0 iff every check passed.
int run(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace besov_ns
