#include "orthopoly.hpp"

#include <iomanip>
#include <ostream>

#include "error.hpp"

namespace expoly {

BasisEvaluation::BasisEvaluation(std::vector<ExtendedReal> nodes, int degree)
    : nodes_(std::move(nodes)),
      degree_(degree),
      values_(static_cast<std::size_t>(degree + 1) * nodes_.size()) {}

namespace {

void require_coefficients(const RecurrenceCoefficients& coeffs, int needed, const char* what) {
  if (needed > coeffs.valid_upto) {
    throw Error(ErrorCode::Precondition,
                std::string(what) + " needs " + std::to_string(needed) +
                    " valid recurrence coefficients, have " + std::to_string(coeffs.valid_upto));
  }
}

}  // namespace

BasisEvaluation eval_basis(const RecurrenceCoefficients& coeffs, int degree,
                           std::span<const ExtendedReal> nodes) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be non-negative");
  require_coefficients(coeffs, degree + 1, "basis evaluation");

  BasisEvaluation basis(std::vector<ExtendedReal>(nodes.begin(), nodes.end()), degree);
  const auto& a = coeffs.a;
  const ExtendedReal p0 = ExtendedReal(1.0) / a[0];
  for (auto& v : basis.row(0)) v = p0;
  if (degree >= 1) {
    auto r1 = basis.row(1);
    for (std::size_t j = 0; j < nodes.size(); ++j) r1[j] = nodes[j] * p0 / a[1];
  }
  for (int n = 1; n < degree; ++n) {
    const auto prev = basis.row(n - 1);
    const auto cur = basis.row(n);
    auto next = basis.row(n + 1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      next[j] = (nodes[j] * cur[j] - a[n] * prev[j]) / a[n + 1];
    }
  }
  return basis;
}

ExtendedReal gram_check(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                        int degree, const QuadratureRule& rule) {
  const BasisEvaluation basis = eval_basis(coeffs, degree, rule.nodes());
  const auto weights = rule.weights();
  const auto nodes = rule.nodes();
  std::vector<ExtendedReal> wrho(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) wrho[j] = weights[j] * pot.weight(nodes[j]);

  ExtendedReal worst(0.0);
  std::vector<ExtendedReal> scaled(nodes.size());
  for (int i = 0; i <= degree; ++i) {
    const auto ri = basis.row(i);
    for (std::size_t j = 0; j < nodes.size(); ++j) scaled[j] = wrho[j] * ri[j];
    for (int k = i; k <= degree; ++k) {
      // p_i p_k is odd when i + k is odd; the symmetric rule integrates it
      // to zero up to rounding, so those entries are checked as well.
      const auto rk = basis.row(k);
      ExtendedReal acc(0.0);
      for (std::size_t j = 0; j < nodes.size(); ++j) acc += scaled[j] * rk[j];
      if (i == k) acc -= ExtendedReal(1.0);
      const ExtendedReal dev = abs(acc);
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

ExtendedReal magnus_asymptote(const EvenPolynomialPotential& pot, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Magnus asymptote needs n >= 1");
  const int m = pot.half_degree();
  const ExtendedReal fm1 = factorial(m - 1);
  const ExtendedReal base = square(fm1) * ExtendedReal(n) /
                            (ExtendedReal(2.0) * pot.leading() * factorial(2 * m - 1));
  if (m == 1) return sqrt(base);
  return pow(base, ExtendedReal(1.0) / ExtendedReal(2 * m));
}

namespace detail {

std::vector<ExtendedReal> expansion_coefficients(const RecurrenceCoefficients& coeffs, int n, int k) {
  if (n < 0 || k < 0) throw Error(ErrorCode::InvalidArgument, "expansion indices must be non-negative");
  require_coefficients(coeffs, n + k + 1, "expansion coefficients");
  auto coef = [&](int idx) { return idx >= 1 ? coeffs.a[idx] : ExtendedReal(0.0); };

  std::vector<ExtendedReal> c{ExtendedReal(1.0)};
  for (int step = 0; step < k; ++step) {
    // step -> step + 1
    std::vector<ExtendedReal> next(step + 2);
    next[0] = c[0] * coef(n - step);
    next[step + 1] = c[step] * coef(n + step + 1);
    for (int r = 1; r <= step; ++r) {
      next[r] = c[r - 1] * coef(n + 2 * r - (step + 1)) + coef(n + 2 * r - step) * c[r];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace detail

std::vector<ExtendedReal> xk_expansion_coeffs(const RecurrenceCoefficients& coeffs, int n, int k) {
  if (k > n) {
    throw Error(ErrorCode::Precondition, "expansion of y^k p_n requires k <= n (k = " +
                                             std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  return detail::expansion_coefficients(coeffs, n, k);
}

std::vector<ExtendedReal> monomial_coefficients(const RecurrenceCoefficients& coeffs, int n) {
  require_coefficients(coeffs, n + 1, "monomial expansion");
  const auto& a = coeffs.a;
  std::vector<ExtendedReal> prev;  // p_{-1} = 0
  std::vector<ExtendedReal> cur{ExtendedReal(1.0) / a[0]};
  for (int k = 0; k < n; ++k) {
    std::vector<ExtendedReal> next(k + 2, ExtendedReal(0.0));
    for (int i = 0; i <= k; ++i) next[i + 1] = cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= a[k] * prev[i];
    for (auto& v : next) v /= a[k + 1];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ExtendedReal eval_monomial(std::span<const ExtendedReal> coefficients, const ExtendedReal& x) {
  ExtendedReal acc(0.0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void write_basis_csv(std::ostream& out, const BasisEvaluation& basis) {
  out << 'x';
  for (int n = 0; n <= basis.degree(); ++n) out << ",P" << n;
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t j = 0; j < basis.node_count(); ++j) {
    out << basis.nodes()[j].to_double();
    for (int n = 0; n <= basis.degree(); ++n) out << ',' << basis.at(n, j).to_double();
    out << '\n';
  }
}

}  // namespace expoly
