#include "ode_coeffs.hpp"

#include <iomanip>
#include <limits>
#include <ostream>

#include "error.hpp"
#include "orthopoly.hpp"

namespace expoly {

ExtendedReal OdeCoefficients::eval_A(const ExtendedReal& x) const {
  const ExtendedReal t = square(x);
  ExtendedReal acc(0.0);
  for (auto it = A.rbegin(); it != A.rend(); ++it) acc = acc * t + *it;
  return a_n * acc;
}

ExtendedReal OdeCoefficients::eval_A_prime(const ExtendedReal& x) const {
  // d/dx sum A_l x^{2l} = x sum_{l>=1} 2l A_l x^{2(l-1)}
  const ExtendedReal t = square(x);
  ExtendedReal acc(0.0);
  for (int l = static_cast<int>(A.size()) - 1; l >= 1; --l) acc = acc * t + ExtendedReal(2 * l) * A[l];
  return a_n * acc * x;
}

ExtendedReal OdeCoefficients::eval_B(const ExtendedReal& x) const {
  const ExtendedReal t = square(x);
  ExtendedReal acc(0.0);
  for (auto it = B.rbegin(); it != B.rend(); ++it) acc = acc * t + *it;
  return a_n * acc * x;
}

bool OdeCoefficients::A_positive() const {
  for (const auto& c : A) {
    if (!(c > ExtendedReal(0.0))) return false;
  }
  return true;
}

namespace detail {

OdeCoefficients build_ode_coeffs_any(const EvenPolynomialPotential& pot,
                                     const RecurrenceCoefficients& coeffs, int n) {
  const int m = pot.half_degree();
  const auto& v = pot.coefficients();
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "ODE index must be non-negative");

  // c_{n,k,.} for every k <= 2m-2, read off the longest expansion step by step.
  std::vector<std::vector<ExtendedReal>> c(2 * m - 1);
  for (int k = 0; k <= 2 * m - 2; ++k) c[k] = expansion_coefficients(coeffs, n, k);

  OdeCoefficients out;
  out.n = n;
  out.a_n = coeffs.a.at(n);
  out.A.assign(m, ExtendedReal(0.0));
  out.B.assign(m >= 2 ? m - 1 : 0, ExtendedReal(0.0));
  for (int l = 0; l < m; ++l) {
    for (int p = l + 1; p <= m; ++p) {
      out.A[l] += ExtendedReal(2 * p) * v[p] * c[2 * p - 2 - 2 * l][p - 1 - l];
    }
  }
  for (int l = 0; l + 2 <= m; ++l) {
    for (int p = l + 2; p <= m; ++p) {
      out.B[l] += ExtendedReal(2 * p) * v[p] * c[2 * p - 2 * l - 3][p - l - 2];
    }
  }
  return out;
}

}  // namespace detail

OdeCoefficients build_ode_coeffs_general(const EvenPolynomialPotential& pot,
                                         const RecurrenceCoefficients& coeffs, int n) {
  const int m = pot.half_degree();
  if (n < 2 * m - 2) {
    throw Error(ErrorCode::Precondition, "general A_n/B_n construction requires n >= 2m - 2 = " +
                                             std::to_string(2 * m - 2));
  }
  return detail::build_ode_coeffs_any(pot, coeffs, n);
}

OdeCoefficients build_ode_coeffs_doublewell(const RecurrenceCoefficients& coeffs, int n) {
  if (n < 1) throw Error(ErrorCode::Precondition, "double-well closed form requires n >= 1");
  if (n + 2 > coeffs.valid_upto) {
    throw Error(ErrorCode::Precondition, "double-well closed form needs a_{n+1}");
  }
  const ExtendedReal& an = coeffs.a[n];
  const ExtendedReal& an1 = coeffs.a[n + 1];
  OdeCoefficients out;
  out.n = n;
  out.a_n = an;
  out.A = {ExtendedReal(4.0) * (square(an) + square(an1) - ExtendedReal(1.0)), ExtendedReal(4.0)};
  out.B = {ExtendedReal(4.0) * an};
  return out;
}

int last_ode_index(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs) {
  return coeffs.valid_upto - 2 * pot.half_degree() + 1;
}

ExtendedReal ode_residual(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                          int n, std::span<const ExtendedReal> nodes) {
  if (n < 1) throw Error(ErrorCode::Precondition, "ODE residual requires n >= 1");
  if (n > last_ode_index(pot, coeffs)) {
    throw Error(ErrorCode::Precondition, "not enough recurrence coefficients for A_n at n = " +
                                             std::to_string(n));
  }
  const OdeCoefficients ode = detail::build_ode_coeffs_any(pot, coeffs, n);
  const auto pn = monomial_coefficients(coeffs, n);
  const auto pm = monomial_coefficients(coeffs, n - 1);
  std::vector<ExtendedReal> dpn(n);
  for (int i = 1; i <= n; ++i) dpn[i - 1] = ExtendedReal(i) * pn[i];

  ExtendedReal worst(0.0);
  ExtendedReal scale(0.0);
  for (const auto& x : nodes) {
    const ExtendedReal rhs = ode.eval_A(x) * eval_monomial(pm, x);
    const ExtendedReal lhs = eval_monomial(dpn, x) + ode.eval_B(x) * eval_monomial(pn, x);
    const ExtendedReal r = abs(lhs - rhs);
    if (r > worst) worst = r;
    if (abs(rhs) > scale) scale = abs(rhs);
  }
  if (scale == ExtendedReal(0.0)) return worst;
  return worst / scale;
}

CurveTable fn_gn_curves(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                        int n, std::span<const ExtendedReal> nodes) {
  if (n > last_ode_index(pot, coeffs)) {
    throw Error(ErrorCode::Precondition, "not enough recurrence coefficients for A_n at n = " +
                                             std::to_string(n));
  }
  const OdeCoefficients ode = detail::build_ode_coeffs_any(pot, coeffs, n);
  CurveTable table;
  table.n = n;
  for (const auto& x : nodes) {
    const ExtendedReal A = ode.eval_A(x);
    if (!(A > ExtendedReal(0.0))) table.A_nonpositive = true;
    if (A == ExtendedReal(0.0)) {
      const double inf = std::numeric_limits<double>::infinity();
      table.points.push_back({x.to_double(), inf, inf, (x / ode.a_n).to_double()});
      continue;
    }
    const ExtendedReal F =
        (ode.eval_B(x) + pot.phi_prime(x)) / A + ode.eval_A_prime(x) / square(A);
    table.points.push_back({x.to_double(), F.to_double(), (ExtendedReal(1.0) / A).to_double(),
                            (x / ode.a_n).to_double()});
  }
  return table;
}

std::optional<int> detect_N0(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs) {
  const int last = last_ode_index(pot, coeffs);
  std::optional<int> n0;
  for (int n = last; n >= 0; --n) {
    if (!detail::build_ode_coeffs_any(pot, coeffs, n).A_positive()) break;
    n0 = n;
  }
  return n0;
}

void write_curves_csv(std::ostream& out, const CurveTable& table) {
  out << "x,Fn,Gn,asymptote\n";
  out << std::setprecision(17);
  for (const auto& p : table.points) {
    out << p.x << ',' << p.F << ',' << p.G << ',' << p.asymptote << '\n';
  }
}

}  // namespace expoly
