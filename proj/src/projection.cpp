#include "projection.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace expoly {

namespace {

TestFunction piecewise_power(int k) {
  TestFunction f;
  f.id = "f" + std::to_string(k);
  f.regularity = k;
  // The node x = 0 takes the right-limit value 0^k = 0.
  f.value = [k](const ExtendedReal& x) {
    return x.hi() < 0.0 ? ExtendedReal(0.0) : pow(x, k);
  };
  f.derivative = [k](const ExtendedReal& x) {
    return x.hi() < 0.0 ? ExtendedReal(0.0) : ExtendedReal(k) * pow(x, k - 1);
  };
  return f;
}

}  // namespace

std::vector<TestFunction> standard_roster() {
  std::vector<TestFunction> roster;
  roster.push_back({"exp", [](const ExtendedReal& x) { return exp(x); },
                    [](const ExtendedReal& x) { return exp(x); }, std::nullopt});
  roster.push_back({"expsq",
                    [](const ExtendedReal& x) { return exp(ExtendedReal(0.1) * square(x)); },
                    [](const ExtendedReal& x) {
                      return ExtendedReal(0.2) * x * exp(ExtendedReal(0.1) * square(x));
                    },
                    std::nullopt});
  roster.push_back({"cos", [](const ExtendedReal& x) { return cos(x); },
                    [](const ExtendedReal& x) { return -sin(x); }, std::nullopt});
  for (int k = 1; k <= 4; ++k) roster.push_back(piecewise_power(k));
  return roster;
}

TestFunction polynomial_function(std::vector<ExtendedReal> coefficients, std::string id) {
  std::vector<ExtendedReal> derivative;
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    derivative.push_back(ExtendedReal(static_cast<double>(i)) * coefficients[i]);
  }
  TestFunction f;
  f.id = std::move(id);
  f.value = [c = std::move(coefficients)](const ExtendedReal& x) { return eval_monomial(c, x); };
  f.derivative = [d = std::move(derivative)](const ExtendedReal& x) { return eval_monomial(d, x); };
  return f;
}

TestFunction test_function(const std::string& id) {
  for (auto& f : standard_roster()) {
    if (f.id == id) return f;
  }
  if (id == "x") return polynomial_function({ExtendedReal(0.0), ExtendedReal(1.0)}, "x");
  if (id.rfind("poly:", 0) == 0) {
    std::vector<ExtendedReal> c;
    std::stringstream ss(id.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_extended(item));
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "empty polynomial '" + id + "'");
    return polynomial_function(std::move(c), id);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown test function '" + id + "'");
}

Projector::Projector(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                     const QuadratureRule& rule, int max_degree)
    : basis_(eval_basis(coeffs, max_degree, rule.nodes())) {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  wrho_.resize(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) wrho_[j] = weights[j] * pot.weight(nodes[j]);
}

std::vector<ExtendedReal> Projector::sample(const RealFunction& f) const {
  std::vector<ExtendedReal> values(basis_.node_count());
  for (std::size_t j = 0; j < values.size(); ++j) {
    // Nodes where the weight underflows contribute nothing; skipping them
    // avoids overflow in fast-growing integrands such as exp(0.1 x^2).
    values[j] = wrho_[j] == ExtendedReal(0.0) ? ExtendedReal(0.0) : f(basis_.nodes()[j]);
  }
  return values;
}

std::vector<ExtendedReal> Projector::coefficients(const RealFunction& f) const {
  const auto values = sample(f);
  std::vector<ExtendedReal> c(basis_.degree() + 1);
  for (int k = 0; k <= basis_.degree(); ++k) {
    const auto row = basis_.row(k);
    ExtendedReal acc(0.0);
    for (std::size_t j = 0; j < values.size(); ++j) acc += wrho_[j] * values[j] * row[j];
    c[k] = acc;
  }
  return c;
}

std::vector<ProjectionError> Projector::errors(const RealFunction& f) const {
  const auto values = sample(f);
  const auto c = coefficients(f);
  ExtendedReal norm2(0.0);
  for (std::size_t j = 0; j < values.size(); ++j) norm2 += wrho_[j] * square(values[j]);

  std::vector<ExtendedReal> residual = values;
  ExtendedReal captured(0.0);
  std::vector<ProjectionError> out;
  for (int N = 0; N <= basis_.degree(); ++N) {
    const auto row = basis_.row(N);
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= c[N] * row[j];
    captured += square(c[N]);
    ExtendedReal direct(0.0);
    for (std::size_t j = 0; j < residual.size(); ++j) direct += wrho_[j] * square(residual[j]);
    out.push_back({N, sqrt(direct), norm2 - captured});
  }
  return out;
}

ExtendedReal Projector::distance(const RealFunction& f, const RealFunction& q) const {
  const auto fv = sample(f);
  const auto qv = sample(q);
  ExtendedReal acc(0.0);
  for (std::size_t j = 0; j < fv.size(); ++j) acc += wrho_[j] * square(fv[j] - qv[j]);
  return sqrt(acc);
}

std::vector<ExtendedReal> project(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                                  const QuadratureRule& rule, const RealFunction& f, int N) {
  return Projector(pot, coeffs, rule, N).coefficients(f);
}

ProjectionError projection_error(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                                 const QuadratureRule& rule, const RealFunction& f, int N,
                                 double tolerance) {
  const Projector projector(pot, coeffs, rule, N);
  const auto errs = projector.errors(f);
  const ProjectionError& e = errs.back();
  const ExtendedReal norm2 = e.parseval_squared + [&] {
    ExtendedReal s(0.0);
    for (const auto& c : projector.coefficients(f)) s += square(c);
    return s;
  }();
  if (e.parseval_squared < -(ExtendedReal(tolerance) * norm2)) {
    throw Error(ErrorCode::Breakdown, "Parseval error " + to_string(e.parseval_squared, 6) +
                                          " is negative beyond tolerance");
  }
  return e;
}

namespace {

struct LineFit {
  double slope;
  int count;
};

std::optional<LineFit> fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return LineFit{(n * sxy - sx * sy) / denom, static_cast<int>(pts.size())};
}

}  // namespace

OrderFit convergence_order(const std::vector<ProjectionError>& points, const FitWindow& window) {
  std::vector<std::pair<double, double>> pts;
  bool hit_floor = false;
  for (const auto& p : points) {
    if (p.N < window.min_n || p.N > window.max_n || p.N < 1) continue;
    const double e = p.direct.to_double();
    if (!(e > window.noise_floor)) {
      hit_floor = true;
      continue;
    }
    pts.emplace_back(std::log(static_cast<double>(p.N)), std::log(e * e));
  }
  if (pts.size() < 4) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 4 errors above the noise floor to fit an order, have " +
                    std::to_string(pts.size()));
  }
  const auto all = fit_slope(pts);
  OrderFit fit;
  fit.order_squared = -all->slope;
  fit.order = fit.order_squared / 2.0;
  fit.points_used = all->count;

  // Accelerating decay on a log-log scale marks spectral convergence.
  const std::size_t half = pts.size() / 2;
  const auto head = fit_slope({pts.begin(), pts.begin() + half});
  const auto tail = fit_slope({pts.begin() + half, pts.end()});
  const bool accelerating = head && tail && -tail->slope > 2.0 * std::max(-head->slope, 1.0);
  fit.spectral = hit_floor || accelerating;
  return fit;
}

void write_convergence_csv(std::ostream& out, const std::vector<ProjectionReport>& reports,
                           const FitWindow& window) {
  out << "function,N,error,order_running\n";
  for (const auto& report : reports) {
    std::vector<ProjectionError> seen;
    for (const auto& p : report.points) {
      seen.push_back(p);
      std::string running;
      if (p.N >= window.min_n) {
        try {
          FitWindow w = window;
          w.max_n = p.N;
          std::ostringstream s;
          s << std::setprecision(6) << convergence_order(seen, w).order;
          running = s.str();
        } catch (const Error&) {
        }
      }
      out << report.function_id << ',' << p.N << ',' << to_string(p.direct, 17) << ',' << running << '\n';
    }
  }
}

void write_order_summary_csv(std::ostream& out, const std::vector<ProjectionReport>& reports) {
  out << "function,order_error_sq,order_error,spectral,points,theoretical_order\n";
  out << std::setprecision(6);
  for (const auto& r : reports) {
    out << r.function_id << ',';
    if (r.fit) {
      out << r.fit->order_squared << ',' << r.fit->order << ',' << (r.fit->spectral ? "yes" : "no") << ','
          << r.fit->points_used;
    } else {
      out << ",,,0";
    }
    out << ',';
    if (!std::isnan(r.theoretical_order)) out << r.theoretical_order;
    out << '\n';
  }
}

ExtendedReal poincare_ratio(const EvenPolynomialPotential& pot, const QuadratureRule& rule,
                            const TestFunction& f) {
  if (!f.derivative) throw Error(ErrorCode::InvalidArgument, "Poincare ratio needs f'");
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  std::vector<ExtendedReal> wrho(nodes.size());
  std::vector<ExtendedReal> fv(nodes.size());
  ExtendedReal mass(0.0);
  ExtendedReal first(0.0);
  ExtendedReal denom(0.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    wrho[j] = weights[j] * pot.weight(nodes[j]);
    if (wrho[j] == ExtendedReal(0.0)) continue;
    fv[j] = f.value(nodes[j]);
    mass += wrho[j];
    first += wrho[j] * fv[j];
    denom += wrho[j] * square(f.derivative(nodes[j]));
  }
  if (!(denom > ExtendedReal(0.0))) {
    throw Error(ErrorCode::Domain, "Poincare ratio undefined: \\int f'^2 rho vanishes");
  }
  const ExtendedReal mean = first / mass;
  ExtendedReal numer(0.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (wrho[j] == ExtendedReal(0.0)) continue;
    const ExtendedReal dphi = pot.phi_prime(nodes[j]);
    numer += wrho[j] * (ExtendedReal(1.0) + square(dphi)) * square(fv[j] - mean);
  }
  return numer / denom;
}

namespace {

// Little-endian base-10^9 digits.
using BigDecimal = std::vector<std::uint32_t>;
constexpr std::uint32_t kBase = 1000000000u;

void add_small(BigDecimal& v, std::uint64_t x) {
  for (std::size_t i = 0; x != 0; ++i) {
    if (i == v.size()) v.push_back(0);
    const std::uint64_t s = v[i] + x;
    v[i] = static_cast<std::uint32_t>(s % kBase);
    x = s / kBase;
  }
}

void double_in_place(BigDecimal& v) {
  std::uint32_t carry = 0;
  for (auto& d : v) {
    const std::uint64_t s = 2ull * d + carry;
    d = static_cast<std::uint32_t>(s % kBase);
    carry = static_cast<std::uint32_t>(s / kBase);
  }
  if (carry) v.push_back(carry);
}

std::string to_decimal(const BigDecimal& v) {
  std::ostringstream s;
  s << v.back();
  for (auto it = v.rbegin() + 1; it != v.rend(); ++it) s << std::setw(9) << std::setfill('0') << *it;
  return s.str();
}

}  // namespace

std::string gamma_sequence(int k) {
  if (k < 0 || k > 3) throw Error(ErrorCode::Range, "gamma_k is only representable for 0 <= k <= 3");
  std::uint64_t g = 1;
  for (int i = 0; i < std::min(k, 2); ++i) g = (1ull << (g + 1)) + g + 2;
  if (k <= 2) return std::to_string(g);
  // gamma_3 = 2^{266} + 267
  BigDecimal v{1};
  for (std::uint64_t i = 0; i < g + 1; ++i) double_in_place(v);
  add_small(v, g + 2);
  return to_decimal(v);
}

}  // namespace expoly
