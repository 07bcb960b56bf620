#include "besov_ns/config.hpp"
#include "besov_ns/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley, Besov norm and compressible flow experiments"};
  std::string kind, config_path, out_dir = "besov-ns-out";
  std::vector<std::string> overrides;
  app.add_option("kind", kind, "experiment kind")->check(CLI::IsMember(besov_ns::experiment_kinds()));
  app.add_option("--config,-c", config_path, "INI file with [grid], [physics], [solver], [experiment]")
      ->check(CLI::ExistingFile);
  app.add_option("--set,-s", overrides, "override as section.key=value (repeatable)");
  app.add_option("--out,-o", out_dir, "output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  besov_ns::ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream text;
      text << in.rdbuf();
      try {
        config = besov_ns::parse_config(text.str());
      } catch (const besov_ns::ConfigError& e) {
        throw besov_ns::ConfigError(config_path + ": " + e.what());
      }
    }
    if (!kind.empty()) config.kind = kind;
    for (const auto& s : overrides) besov_ns::apply_override(config, s);
    besov_ns::validate_config(config);
  } catch (const besov_ns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    return besov_ns::run(config, out_dir, std::cout);
  } catch (const besov_ns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
