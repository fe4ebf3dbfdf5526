#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "chebyshev.hpp"
#include "error.hpp"
#include "ode_coeffs.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"
#include "projection.hpp"

namespace expoly {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  // Polynomial ids carry commas of their own, so ';' separates list items
  // whenever it is present.
  const char sep = s.find(';') != std::string::npos ? ';' : ',';
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "'" + key + "' expects an integer, got '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "'" + key + "' expects a number, got '" + value + "'");
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i];
  }
  return s;
}

std::string fmt(double v, int digits = 17) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);
  if (key == "potential") {
    EvenPolynomialPotential::parse(value);  // validate early
    potential = value;
  } else if (key == "method") {
    method = parse_moment_method(value);
  } else if (key == "halfwidth") {
    halfwidth = to_double(key, value);
  } else if (key == "panels") {
    panels = to_int(key, value);
  } else if (key == "rule") {
    rule = parse_quadrature_kind(value);
  } else if (key == "max_n") {
    max_n = to_int(key, value);
  } else if (key == "functions") {
    functions = split_list(value);
    for (const auto& id : functions) test_function(id);
  } else if (key == "out") {
    out = value;
  } else if (key == "curve_n") {
    curve_n.clear();
    for (const auto& item : split_list(value)) curve_n.push_back(to_int(key, item));
  } else if (key == "x_min") {
    x_min = to_double(key, value);
  } else if (key == "x_max") {
    x_max = to_double(key, value);
  } else if (key == "x_count") {
    x_count = to_int(key, value);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown config key '" + raw_key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (max_n < 1) throw Error(ErrorCode::InvalidArgument, "max_n must be >= 1");
  if (panels < 1) throw Error(ErrorCode::InvalidArgument, "panels must be >= 1");
  if (!(halfwidth > 0.0)) throw Error(ErrorCode::InvalidArgument, "halfwidth must be positive");
  if (x_count < 2 || !(x_max > x_min)) {
    throw Error(ErrorCode::InvalidArgument, "need x_min < x_max and x_count >= 2");
  }
  for (int n : curve_n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "curve_n entries must be non-negative");
  }
  if (method == MomentMethod::ClosedFormHermite && EvenPolynomialPotential::parse(potential).name() != "hermite") {
    throw Error(ErrorCode::InvalidArgument, "closed-form moments exist only for the hermite preset");
  }
}

std::string ExperimentConfig::to_text() const {
  std::vector<std::string> ns;
  for (int n : curve_n) ns.push_back(std::to_string(n));
  std::ostringstream s;
  s << "potential = " << potential << '\n'
    << "method = " << to_string(method) << '\n'
    << "halfwidth = " << fmt(halfwidth) << '\n'
    << "panels = " << panels << '\n'
    << "rule = " << to_string(rule) << '\n'
    << "max_n = " << max_n << '\n'
    << "functions = " << join(functions, ";") << '\n'
    << "out = " << out << '\n'
    << "curve_n = " << join(ns, ",") << '\n'
    << "x_min = " << fmt(x_min) << '\n'
    << "x_max = " << fmt(x_max) << '\n'
    << "x_count = " << x_count << '\n';
  return s.str();
}

std::uint64_t ExperimentConfig::hash() const {
  // The output directory does not affect any number, so it is left out.
  ExperimentConfig numeric = *this;
  numeric.out.clear();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : numeric.to_text()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  apply_config_text(config, text);
  return config;
}

void apply_config_text(ExperimentConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string provenance_line(const ExperimentConfig& config, const std::string& detail) {
  std::ostringstream s;
  s << "# expoly config=" << std::hex << std::setw(16) << std::setfill('0') << config.hash() << std::dec
    << " potential=" << config.potential << " method=" << to_string(config.method)
    << " rule=" << to_string(config.rule) << " halfwidth=" << fmt(config.halfwidth)
    << " panels=" << config.panels << " arithmetic=double-double";
  if (!detail.empty()) s << ' ' << detail;
  return s.str();
}

namespace {

struct Pipeline {
  EvenPolynomialPotential pot;
  QuadratureRule rule;
  MomentTable moments;
  RecurrenceCoefficients coeffs;
};

MomentTable compute_moments(const EvenPolynomialPotential& pot, MomentMethod method, int count,
                            const QuadratureRule& rule) {
  switch (method) {
    case MomentMethod::Quadrature:
      return moments_quadrature(pot, count, rule);
    case MomentMethod::Recursion:
      return moments_recursion(pot, count, rule);
    case MomentMethod::ClosedFormHermite:
      return hermite_moments_closed_form(count);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown moment method");
}

Pipeline build_pipeline(const ExperimentConfig& config, int n_coeffs) {
  config.validate();
  auto pot = EvenPolynomialPotential::parse(config.potential);
  QuadratureRule rule(ExtendedReal(config.halfwidth), config.panels, config.rule);
  auto moments = compute_moments(pot, config.method, 2 * n_coeffs, rule);
  auto coeffs = chebyshev_betas(moments, n_coeffs);
  return {std::move(pot), std::move(rule), std::move(moments), std::move(coeffs)};
}

std::filesystem::path output_path(const ExperimentConfig& config, const std::string& file) {
  std::filesystem::create_directories(config.out);
  return std::filesystem::path(config.out) / file;
}

std::ofstream open_csv(const ExperimentConfig& config, const std::string& file, const std::string& detail) {
  const auto path = output_path(config, file);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << provenance_line(config, detail) << '\n';
  return out;
}

std::vector<ExtendedReal> x_grid(const ExperimentConfig& config) {
  std::vector<ExtendedReal> xs(config.x_count);
  const ExtendedReal lo(config.x_min);
  const ExtendedReal span = ExtendedReal(config.x_max) - lo;
  for (int i = 0; i < config.x_count; ++i) {
    xs[i] = lo + span * ExtendedReal(i) / ExtendedReal(config.x_count - 1);
  }
  return xs;
}

std::vector<TestFunction> roster(const ExperimentConfig& config) {
  if (config.functions.empty()) return standard_roster();
  std::vector<TestFunction> fs;
  for (const auto& id : config.functions) fs.push_back(test_function(id));
  return fs;
}

std::string detail_valid(const RecurrenceCoefficients& c) {
  return "valid_upto=" + std::to_string(c.valid_upto) + "/" + std::to_string(c.size());
}

std::string summary_line(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"moments",  "betas",  "basis",            "ode-check",
                                              "project",  "convergence", "curves", "validate-hermite",
                                              "validate-doublewell"};
  return names;
}

std::string run_experiment(const ExperimentConfig& config, const std::string& name) {
  if (name == "moments") return run_moments(config);
  if (name == "betas") return run_betas(config);
  if (name == "basis") return run_basis(config);
  if (name == "ode-check") return run_ode_check(config);
  if (name == "project") return run_project(config);
  if (name == "convergence") return run_projection_study(config);
  if (name == "curves") return run_curves(config);
  if (name == "validate-hermite") return run_hermite_validation(config);
  if (name == "validate-doublewell") return run_doublewell_validation(config);
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
}

std::string run_moments(const ExperimentConfig& config) {
  config.validate();
  const auto pot = EvenPolynomialPotential::parse(config.potential);
  const QuadratureRule rule(ExtendedReal(config.halfwidth), config.panels, config.rule);
  const auto table = compute_moments(pot, config.method, 2 * config.max_n, rule);
  std::string detail = "count=" + std::to_string(table.size());
  if (table.breakdown_index) detail += " breakdown=" + std::to_string(*table.breakdown_index);
  auto out = open_csv(config, "moments.csv", detail);
  write_moments_csv(out, table);
  std::string s = summary_line("file", output_path(config, "moments.csv").string());
  s += summary_line("moments", std::to_string(table.size()));
  s += summary_line("mu_0", to_string(table[0]));
  if (table.breakdown_index) s += summary_line("breakdown_index", std::to_string(*table.breakdown_index));
  return s;
}

std::string run_betas(const ExperimentConfig& config) {
  const auto p = build_pipeline(config, config.max_n);
  auto out = open_csv(config, "betas.csv", detail_valid(p.coeffs));
  write_recurrence_csv(out, p.coeffs);
  std::string s = summary_line("file", output_path(config, "betas.csv").string());
  s += summary_line("coefficients", std::to_string(p.coeffs.size()));
  s += summary_line("valid_upto", std::to_string(p.coeffs.valid_upto));
  if (!p.coeffs.diagnostic.empty()) s += summary_line("diagnostic", p.coeffs.diagnostic);
  if (p.pot.name() == "hermite") s += summary_line("beta_error", to_string(beta_error_hermite(p.coeffs), 3));
  return s;
}

std::string run_basis(const ExperimentConfig& config) {
  const auto p = build_pipeline(config, config.max_n + 1);
  const int degree = std::min(config.max_n, p.coeffs.valid_upto - 1);
  if (degree < 0) throw Error(ErrorCode::Breakdown, "no valid recurrence coefficients");
  const auto xs = x_grid(config);
  const auto basis = eval_basis(p.coeffs, degree, xs);
  auto out = open_csv(config, "basis.csv", detail_valid(p.coeffs) + " degree=" + std::to_string(degree));
  write_basis_csv(out, basis);
  std::string s = summary_line("file", output_path(config, "basis.csv").string());
  s += summary_line("degree", std::to_string(degree));
  s += summary_line("gram_deviation", to_string(gram_check(p.pot, p.coeffs, degree, p.rule), 3));
  return s;
}

std::string run_ode_check(const ExperimentConfig& config) {
  const auto probe = EvenPolynomialPotential::parse(config.potential);
  const int m = probe.half_degree();
  const auto p = build_pipeline(config, config.max_n + 2 * m);
  const int last = std::min(config.max_n, last_ode_index(p.pot, p.coeffs));
  const auto xs = x_grid(config);
  const bool doublewell = p.pot.name() == "doublewell";
  const auto n0 = detect_N0(p.pot, p.coeffs);

  auto out = open_csv(config, "ode_check.csv",
                      detail_valid(p.coeffs) + " N0=" + (n0 ? std::to_string(*n0) : std::string("none")));
  out << "n,residual,A_positive,closed_form_rel_diff\n";
  ExtendedReal worst(0.0);
  ExtendedReal worst_cf(0.0);
  for (int n = 1; n <= last; ++n) {
    const auto r = ode_residual(p.pot, p.coeffs, n, xs);
    const auto general = detail::build_ode_coeffs_any(p.pot, p.coeffs, n);
    if (n0 && n >= *n0 && r > worst) worst = r;
    std::string cf;
    if (doublewell && n + 2 <= p.coeffs.valid_upto) {
      const auto closed = build_ode_coeffs_doublewell(p.coeffs, n);
      ExtendedReal d(0.0);
      for (std::size_t l = 0; l < general.A.size(); ++l) {
        d = std::max(d, abs(closed.A[l] - general.A[l]) / abs(general.A[l]));
      }
      for (std::size_t l = 0; l < general.B.size(); ++l) {
        d = std::max(d, abs(closed.B[l] - general.B[l]) / abs(general.B[l]));
      }
      worst_cf = std::max(worst_cf, d);
      cf = to_string(d, 6);
    }
    out << n << ',' << to_string(r, 6) << ',' << (general.A_positive() ? 1 : 0) << ',' << cf << '\n';
  }
  std::string s = summary_line("file", output_path(config, "ode_check.csv").string());
  s += summary_line("N0", n0 ? std::to_string(*n0) : "none");
  s += summary_line("last_n", std::to_string(last));
  s += summary_line("max_residual_from_N0", to_string(worst, 3));
  if (doublewell) s += summary_line("max_closed_form_rel_diff", to_string(worst_cf, 3));
  return s;
}

std::string run_project(const ExperimentConfig& config) {
  const auto p = build_pipeline(config, config.max_n + 1);
  const int degree = std::min(config.max_n, p.coeffs.valid_upto - 1);
  const Projector projector(p.pot, p.coeffs, p.rule, degree);
  auto out = open_csv(config, "projection_coefficients.csv",
                      detail_valid(p.coeffs) + " degree=" + std::to_string(degree));
  out << "function,k,c_k\n";
  const auto fs = roster(config);
  for (const auto& f : fs) {
    const auto c = projector.coefficients(f.value);
    for (int k = 0; k <= degree; ++k) out << f.id << ',' << k << ',' << to_string(c[k], 20) << '\n';
  }
  std::string s = summary_line("file", output_path(config, "projection_coefficients.csv").string());
  s += summary_line("degree", std::to_string(degree));
  s += summary_line("functions", std::to_string(fs.size()));
  return s;
}

std::string run_projection_study(const ExperimentConfig& config) {
  const auto p = build_pipeline(config, config.max_n + 1);
  const int degree = std::min(config.max_n, p.coeffs.valid_upto - 1);
  const Projector projector(p.pot, p.coeffs, p.rule, degree);
  const bool hermite = p.pot.name() == "hermite";
  FitWindow window;
  window.max_n = std::min(window.max_n, degree);

  std::vector<ProjectionReport> reports;
  for (const auto& f : roster(config)) {
    ProjectionReport r;
    r.function_id = f.id;
    r.points = projector.errors(f.value);
    try {
      r.fit = convergence_order(r.points, window);
    } catch (const Error&) {
    }
    r.theoretical_order =
        hermite && f.regularity ? *f.regularity / 2.0 : std::numeric_limits<double>::quiet_NaN();
    reports.push_back(std::move(r));
  }
  const std::string detail = detail_valid(p.coeffs) + " degree=" + std::to_string(degree);
  {
    auto out = open_csv(config, "convergence.csv", detail);
    write_convergence_csv(out, reports, window);
  }
  {
    auto out = open_csv(config, "orders.csv", detail);
    write_order_summary_csv(out, reports);
  }
  std::string s = summary_line("file", output_path(config, "convergence.csv").string());
  s += summary_line("file", output_path(config, "orders.csv").string());
  s += summary_line("degree", std::to_string(degree));
  for (const auto& r : reports) {
    std::string v = "error(N=" + std::to_string(degree) + ")=" + to_string(r.points.back().direct, 3);
    if (r.fit) v += " order=" + fmt(r.fit->order, 4) + (r.fit->spectral ? " spectral" : "");
    s += summary_line(r.function_id, v);
  }
  return s;
}

std::string run_curves(const ExperimentConfig& config) {
  const auto probe = EvenPolynomialPotential::parse(config.potential);
  const int top = config.curve_n.empty() ? 0 : *std::max_element(config.curve_n.begin(), config.curve_n.end());
  const auto p = build_pipeline(config, top + 2 * probe.half_degree());
  const auto xs = x_grid(config);
  std::string s;
  std::ostringstream gp;
  gp << "# gnuplot script: F_n (lines), G_n (dots) and the asymptote x/a_n\n"
     << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\n";
  for (int n : config.curve_n) {
    const auto table = fn_gn_curves(p.pot, p.coeffs, n, xs);
    const std::string file = "curves_n" + std::to_string(n) + ".csv";
    auto out = open_csv(config, file,
                        detail_valid(p.coeffs) + " n=" + std::to_string(n) +
                            " A_nonpositive=" + (table.A_nonpositive ? "1" : "0"));
    write_curves_csv(out, table);
    gp << "set title 'n = " << n << "'\n"
       << "plot '" << file << "' every ::1 using 1:2 with lines lw 1 title 'F_n', \\\n"
       << "     '' every ::1 using 1:3 with points pt 7 ps 0.3 title 'G_n', \\\n"
       << "     '' every ::1 using 1:4 with lines dt 2 title 'x/a_n'\n"
       << "pause -1\n";
    s += summary_line("file", output_path(config, file).string());
  }
  std::ofstream script(output_path(config, "curves.gp"));
  script << provenance_line(config, "") << '\n' << gp.str();
  s += summary_line("file", output_path(config, "curves.gp").string());
  return s;
}

std::string run_hermite_validation(const ExperimentConfig& config) {
  config.validate();
  const auto pot = EvenPolynomialPotential::parse(config.potential);
  if (pot.name() != "hermite") {
    throw Error(ErrorCode::Precondition, "validate-hermite requires the hermite preset");
  }
  const QuadratureRule rule(ExtendedReal(config.halfwidth), config.panels, config.rule);
  const std::vector<int> Ns{10, 20, 30, 40, 50, 60, 70};
  const int top = Ns.back() + 1;
  const auto exact = hermite_exact_coefficients(top);
  const auto exact_basis = eval_basis(exact, top - 1, rule.nodes());
  std::vector<ExtendedReal> wrho(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) wrho[j] = rule.weights()[j] * pot.weight(rule.nodes()[j]);

  auto out = open_csv(config, "hermite_validation.csv", "");
  out << "N,method,beta_error,basis_l2_error,valid_upto\n";
  std::string s = summary_line("file", output_path(config, "hermite_validation.csv").string());
  for (MomentMethod method : {MomentMethod::Quadrature, MomentMethod::Recursion}) {
    const auto moments = compute_moments(pot, method, 2 * top, rule);
    for (int N : Ns) {
      const auto coeffs = chebyshev_betas(moments, N + 1);
      const int degree = std::min(N, coeffs.valid_upto - 1);
      const auto basis = eval_basis(coeffs, degree, rule.nodes());
      ExtendedReal l2(0.0);
      for (int k = 0; k <= degree; ++k) {
        ExtendedReal acc(0.0);
        for (std::size_t j = 0; j < rule.size(); ++j) acc += wrho[j] * square(basis.at(k, j) - exact_basis.at(k, j));
        l2 = std::max(l2, sqrt(acc));
      }
      const auto berr = beta_error_hermite(coeffs);
      out << N << ',' << to_string(method) << ',' << to_string(berr, 6) << ',' << to_string(l2, 6) << ','
          << coeffs.valid_upto << '\n';
      s += summary_line(to_string(method) + " N=" + std::to_string(N),
                        "beta_error=" + to_string(berr, 3) + " basis_l2_error=" + to_string(l2, 3));
    }
  }
  return s;
}

std::string run_doublewell_validation(const ExperimentConfig& config) {
  config.validate();
  const auto pot = EvenPolynomialPotential::parse(config.potential);
  if (pot.name() != "doublewell") {
    throw Error(ErrorCode::Precondition, "validate-doublewell requires the doublewell preset");
  }
  const QuadratureRule rule(ExtendedReal(config.halfwidth), config.panels, config.rule);
  const int count = std::max(config.max_n, 60) + 1;

  auto out = open_csv(config, "doublewell_ratio.csv", "");
  out << "n,method,beta,magnus,ratio\n";
  std::string s = summary_line("file", output_path(config, "doublewell_ratio.csv").string());
  for (MomentMethod method : {MomentMethod::Quadrature, MomentMethod::Recursion}) {
    const auto moments = compute_moments(pot, method, 2 * count, rule);
    const auto coeffs = chebyshev_betas(moments, count);
    std::optional<int> diverge;
    ExtendedReal worst(0.0);
    for (int n = 1; n < coeffs.size(); ++n) {
      const ExtendedReal magnus = magnus_asymptote(pot, n);
      std::string ratio_text;
      bool bad = n >= coeffs.valid_upto;
      if (!bad) {
        const ExtendedReal ratio = coeffs.a[n] / magnus;
        ratio_text = to_string(ratio, 17);
        if (n >= 30 && n <= 55) worst = std::max(worst, abs(ratio - ExtendedReal(1.0)));
        bad = abs(ratio - ExtendedReal(1.0)) > ExtendedReal(0.1);
      }
      if (bad && n >= 10 && !diverge) diverge = n;
      out << n << ',' << to_string(method) << ',' << to_string(coeffs.beta[n], 17) << ','
          << to_string(magnus, 17) << ',' << ratio_text << '\n';
    }
    const std::string tag = to_string(method);
    s += summary_line(tag + " first_invalid",
                      coeffs.valid_upto < coeffs.size() ? std::to_string(coeffs.valid_upto) : "none");
    s += summary_line(tag + " first_divergence", diverge ? std::to_string(*diverge) : "none");
    s += summary_line(tag + " max_ratio_deviation_30_55", to_string(worst, 3));
    if (moments.breakdown_index) s += summary_line(tag + " moment_breakdown", std::to_string(*moments.breakdown_index));
  }
  return s;
}

}  // namespace expoly
