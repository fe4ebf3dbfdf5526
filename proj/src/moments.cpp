#include "moments.hpp"

#include <ostream>

#include "error.hpp"

namespace expoly {

std::string to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::Quadrature: return "quad";
    case MomentMethod::Recursion: return "rec";
    case MomentMethod::ClosedFormHermite: return "closed";
  }
  return "?";
}

MomentMethod parse_moment_method(const std::string& text) {
  if (text == "quad" || text == "quadrature" || text == "brute-force") return MomentMethod::Quadrature;
  if (text == "rec" || text == "recursion") return MomentMethod::Recursion;
  if (text == "closed") return MomentMethod::ClosedFormHermite;
  throw Error(ErrorCode::InvalidArgument, "unknown moment method '" + text + "'");
}

MomentTable moments_quadrature(const EvenPolynomialPotential& pot, int count,
                               const QuadratureRule& rule) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "moment count must be positive");

  MomentTable table;
  table.method = MomentMethod::Quadrature;
  table.halfwidth = rule.halfwidth();
  table.panels = rule.panels();
  table.mu.assign(count, ExtendedReal(0.0));

  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  // Running products w_j rho(x_j) x_j^k, advanced by x_j^2 per even moment.
  std::vector<ExtendedReal> running(nodes.size());
  std::vector<ExtendedReal> x2(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    running[j] = weights[j] * pot.weight(nodes[j]);
    x2[j] = square(nodes[j]);
  }
  for (int k = 0; k < count; k += 2) {
    ExtendedReal acc(0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      acc += running[j];
      running[j] *= x2[j];
    }
    table.mu[k] = acc;
  }

  const int top = (count - 1) / 2 * 2;
  const ExtendedReal edge = pot.weight(rule.halfwidth());
  const ExtendedReal tail =
      edge == ExtendedReal(0.0) ? ExtendedReal(0.0) : edge * pow(rule.halfwidth(), top);
  if (!(table.mu[0] > ExtendedReal(0.0)) ||
      !(tail < ldexp(table.mu[top], -110))) {
    throw Error(ErrorCode::Precondition,
                "interval too small for requested moment count (tail rho(L) L^" +
                    std::to_string(top) + " = " + to_string(tail, 6) + ")");
  }
  return table;
}

MomentTable moments_recursion(const EvenPolynomialPotential& pot,
                              const std::vector<ExtendedReal>& even_seeds, int count) {
  const int m = pot.half_degree();
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "moment count must be positive");
  if (static_cast<int>(even_seeds.size()) != m) {
    throw Error(ErrorCode::InvalidArgument,
                "moment recursion needs exactly m = " + std::to_string(m) + " even seeds");
  }
  for (const auto& s : even_seeds) {
    if (!(s > ExtendedReal(0.0))) throw Error(ErrorCode::Precondition, "moment seeds must be positive");
  }

  const auto& v = pot.coefficients();
  const int evens = (count + 1) / 2;
  std::vector<ExtendedReal> even(std::max(evens, m));
  for (int i = 0; i < m; ++i) even[i] = even_seeds[i];

  MomentTable table;
  table.method = MomentMethod::Recursion;
  const ExtendedReal lead = ExtendedReal(2 * m) * v[m];
  for (int k = 0; m + k < evens; ++k) {
    ExtendedReal rhs = ExtendedReal(2 * k + 1) * even[k];
    for (int p = 1; p < m; ++p) rhs -= ExtendedReal(2 * p) * v[p] * even[p + k];
    even[m + k] = rhs / lead;
    if (!table.breakdown_index && !(even[m + k] > ExtendedReal(0.0))) {
      table.breakdown_index = 2 * (m + k);
    }
  }

  table.mu.assign(count, ExtendedReal(0.0));
  for (int i = 0; 2 * i < count; ++i) table.mu[2 * i] = even[i];
  return table;
}

MomentTable moments_recursion(const EvenPolynomialPotential& pot, int count,
                              const QuadratureRule& rule) {
  const int m = pot.half_degree();
  const MomentTable seeds = moments_quadrature(pot, 2 * m - 1, rule);
  std::vector<ExtendedReal> even;
  for (int i = 0; i < m; ++i) even.push_back(seeds.mu[2 * i]);
  MomentTable table = moments_recursion(pot, even, count);
  table.halfwidth = rule.halfwidth();
  table.panels = rule.panels();
  return table;
}

MomentTable hermite_moments_closed_form(int count) {
  if (count < 1 || count > 600) throw Error(ErrorCode::InvalidArgument, "closed-form count must be in [1, 600]");
  MomentTable table;
  table.method = MomentMethod::ClosedFormHermite;
  table.mu.assign(count, ExtendedReal(0.0));
  // (2k)!/(2^k k!) = (2k-1)!!
  ExtendedReal value(1.0);
  for (int k = 0; 2 * k < count; ++k) {
    if (k > 0) value *= ExtendedReal(2 * k - 1);
    table.mu[2 * k] = value;
  }
  return table;
}

void check_moment_table(const MomentTable& table) {
  for (std::size_t k = 0; k < table.mu.size(); ++k) {
    if (k % 2 == 1 && !(table.mu[k] == ExtendedReal(0.0))) {
      throw Error(ErrorCode::Precondition, "odd moment " + std::to_string(k) + " is not zero");
    }
    if (k % 2 == 0 && !(table.mu[k] > ExtendedReal(0.0))) {
      throw Error(ErrorCode::Precondition, "even moment " + std::to_string(k) + " is not positive");
    }
  }
}

void write_moments_csv(std::ostream& out, const MomentTable& table) {
  out << "k,mu_k,method\n";
  const std::string method = to_string(table.method);
  for (std::size_t k = 0; k < table.mu.size(); ++k) {
    out << k << ',' << to_string(table.mu[k]) << ',' << method << '\n';
  }
}

}  // namespace expoly
