#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "moments.hpp"
#include "quadrature.hpp"

namespace expoly {

/// Settings shared by every batch experiment.  Read from `key = value`
/// lines (with `#` comments) and overridable key by key.
struct ExperimentConfig {
  std::string potential = "hermite";
  MomentMethod method = MomentMethod::Quadrature;
  double halfwidth = 30.0;
  int panels = 350;
  QuadratureKind rule = QuadratureKind::Weddle;
  int max_n = 60;
  /// Empty means the standard roster.
  std::vector<std::string> functions;
  std::string out = ".";
  std::vector<int> curve_n{4, 10, 50};
  double x_min = -3.0;
  double x_max = 3.0;
  int x_count = 601;

  /// Throws Error(InvalidArgument) for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  /// Throws Error(InvalidArgument) when an invariant is violated.
  void validate() const;
  /// Canonical `key = value` text; equal configs give equal text.
  std::string to_text() const;
  /// FNV-1a over to_text() with `out` blanked.
  std::uint64_t hash() const;
};

ExperimentConfig parse_config(const std::string& text);
/// Applies `key = value` lines on top of `config`.
void apply_config_text(ExperimentConfig& config, const std::string& text);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// `# expoly config=<hash> ...` line that starts every CSV.
std::string provenance_line(const ExperimentConfig& config, const std::string& detail);

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs one experiment, writes its files under config.out and returns a
/// short `key: value` summary.  Throws Error on failure.
std::string run_experiment(const ExperimentConfig& config, const std::string& name);

std::string run_moments(const ExperimentConfig& config);
std::string run_betas(const ExperimentConfig& config);
std::string run_basis(const ExperimentConfig& config);
std::string run_ode_check(const ExperimentConfig& config);
std::string run_project(const ExperimentConfig& config);
std::string run_projection_study(const ExperimentConfig& config);
std::string run_curves(const ExperimentConfig& config);
std::string run_hermite_validation(const ExperimentConfig& config);
std::string run_doublewell_validation(const ExperimentConfig& config);

}  // namespace expoly
