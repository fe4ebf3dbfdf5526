#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "chebyshev.hpp"
#include "extended_real.hpp"
#include "potential.hpp"

namespace expoly {

/// Polynomials of the first-order equation (d/dx + B_n) p_n = A_n p_{n-1}:
///   A_n(x) = a_n sum_{l=0}^{m-1} A_{n,l} x^{2l},
///   B_n(x) = a_n sum_{l=0}^{m-2} B_{n,l} x^{2l+1}.
struct OdeCoefficients {
  int n = 0;
  ExtendedReal a_n{0.0};
  std::vector<ExtendedReal> A;  // A_{n,l}
  std::vector<ExtendedReal> B;  // B_{n,l}, empty when m = 1

  ExtendedReal eval_A(const ExtendedReal& x) const;
  ExtendedReal eval_A_prime(const ExtendedReal& x) const;
  ExtendedReal eval_B(const ExtendedReal& x) const;

  /// True when every A_{n,l} is positive, so A_n is convex with its
  /// minimum A_n(0) > 0.
  bool A_positive() const;
};

/// A_{n,l} = sum_{p > l} 2p v_p c_{n,2p-2-2l,p-1-l} and
/// B_{n,l} = sum_{p > l+1} 2p v_p c_{n,2p-2l-3,p-l-2}, with the c's from
/// the y^k p_n expansion.  Requires n >= 2m - 2 and n + 2m - 1 <= valid_upto.
OdeCoefficients build_ode_coeffs_general(const EvenPolynomialPotential& pot,
                                         const RecurrenceCoefficients& coeffs, int n);

/// For phi = (x-1)^2 (x+1)^2:
///   A_n = 4 a_n (x^2 + a_n^2 + a_{n+1}^2 - 1),  B_n = 4 a_n^2 x.
/// Requires 1 <= n and n + 2 <= valid_upto.
OdeCoefficients build_ode_coeffs_doublewell(const RecurrenceCoefficients& coeffs, int n);

namespace detail {
/// General construction for any n >= 0; expansion terms that would land on
/// p_{-1}, p_{-2}, ... are dropped, which is exact.
OdeCoefficients build_ode_coeffs_any(const EvenPolynomialPotential& pot,
                                     const RecurrenceCoefficients& coeffs, int n);
}  // namespace detail

/// max_x |p_n' + B_n p_n - A_n p_{n-1}| / max_x |A_n p_{n-1}| over `nodes`.
/// p_n' comes from differentiating the monomial expansion of p_n.
ExtendedReal ode_residual(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                          int n, std::span<const ExtendedReal> nodes);

struct CurvePoint {
  double x;
  double F;
  double G;
  double asymptote;
};

struct CurveTable {
  int n = 0;
  std::vector<CurvePoint> points;
  /// Set when A_n <= 0 at some node (n below N_0).
  bool A_nonpositive = false;
};

/// G_n = 1/A_n, F_n = (B_n A_n + phi' A_n + A_n') / A_n^2 and the line x/a_n.
CurveTable fn_gn_curves(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                        int n, std::span<const ExtendedReal> nodes);

/// Smallest N such that every computable A_k, k >= N, has positive
/// standard-basis coefficients; nullopt when the last computable A_k does
/// not.
std::optional<int> detect_N0(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs);

/// Largest n for which A_n, B_n can be built from `coeffs`.
int last_ode_index(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs);

/// `x,Fn,Gn,asymptote` rows.
void write_curves_csv(std::ostream& out, const CurveTable& table);

}  // namespace expoly
