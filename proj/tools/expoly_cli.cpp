// Batch driver for the expoly experiments.  Talks to the library only
// through the C interface in expoly/expoly.h.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "expoly/expoly.h"

namespace {

struct ConfigDeleter {
  void operator()(expoly_config* c) const { expoly_config_free(c); }
};
using ConfigPtr = std::unique_ptr<expoly_config, ConfigDeleter>;

struct Options {
  std::string config_file;
  // Flag name (as a config key) -> value, filled only for flags the user gave.
  std::map<std::string, std::string> overrides;
};

void add_common_options(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_file, "key = value configuration file")->check(CLI::ExistingFile);
  const std::vector<std::pair<std::string, std::string>> keys{
      {"potential", "hermite, doublewell, or coefficients v0,v1,..."},
      {"method", "moment method: quad, rec, closed"},
      {"halfwidth", "quadrature interval half-width L"},
      {"panels", "number of seven-point panels"},
      {"rule", "quadrature rule: weddle, newton-cotes"},
      {"max-n", "largest polynomial degree / coefficient count"},
      {"out", "output directory"},
      {"functions", "test functions (exp, expsq, cos, f1..f4, x, poly:c0,c1,..); ';' separated"},
      {"curve-n", "comma-separated n values for curves"},
      {"x-min", "left end of the evaluation grid"},
      {"x-max", "right end of the evaluation grid"},
      {"x-count", "number of grid points"},
  };
  for (const auto& [key, help] : keys) {
    std::string config_key = key;
    for (auto& c : config_key) c = c == '-' ? '_' : c;
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, config_key](const std::string& v) { opts.overrides[config_key] = v; }, help);
  }
}

int report(expoly_status st, const std::string& what) {
  std::cerr << "expoly: " << what << ": " << expoly_status_string(st);
  const std::string detail = expoly_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << '\n';
  return static_cast<int>(st);
}

int run(const std::string& experiment, const Options& opts) {
  expoly_config* raw = nullptr;
  if (auto st = expoly_config_create(&raw); st != EXPOLY_OK) return report(st, "config");
  ConfigPtr config(raw);
  // The double-well study is only defined for its preset, so it becomes the
  // default there; a config file or --potential still takes precedence.
  if (experiment == "validate-doublewell") expoly_config_set(config.get(), "potential", "doublewell");
  if (!opts.config_file.empty()) {
    if (auto st = expoly_config_load_file(config.get(), opts.config_file.c_str()); st != EXPOLY_OK) {
      return report(st, opts.config_file);
    }
  }
  for (const auto& [key, value] : opts.overrides) {
    if (auto st = expoly_config_set(config.get(), key.c_str(), value.c_str()); st != EXPOLY_OK) {
      return report(st, "--" + key);
    }
  }
  std::string summary(1 << 16, '\0');
  const auto st = expoly_run(config.get(), experiment.c_str(), summary.data(), summary.size());
  if (st != EXPOLY_OK && st != EXPOLY_BUFFER_TOO_SMALL) return report(st, experiment);
  summary.resize(summary.find('\0'));
  std::cout << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthonormal polynomials for exponential weights: batch experiments"};
  app.set_version_flag("--version", std::string(expoly_version()));
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"moments", "write mu_0..mu_{2N-1} to moments.csv"},
      {"betas", "recurrence coefficients beta_k, a_k to betas.csv"},
      {"basis", "orthonormal polynomials on the x grid to basis.csv"},
      {"ode-check", "residuals of (d/dx + B_n) p_n = A_n p_{n-1} and N_0"},
      {"project", "projection coefficients of the test functions"},
      {"convergence", "projection errors versus N and fitted orders"},
      {"curves", "F_n, G_n and x/a_n tables plus a gnuplot script"},
      {"validate-hermite", "beta and basis errors against the exact Hermite case"},
      {"validate-doublewell", "sqrt(beta_n) against the Magnus asymptote, both moment methods"},
  };
  Options opts;
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common_options(cmd, opts);
    cmd->callback([&chosen, name = name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  return run(chosen, opts);
}
