#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "chebyshev.hpp"
#include "extended_real.hpp"
#include "potential.hpp"
#include "quadrature.hpp"

namespace expoly {

/// Orthonormal polynomials p_0..p_N evaluated on a node set.
class BasisEvaluation {
 public:
  BasisEvaluation(std::vector<ExtendedReal> nodes, int degree);

  int degree() const { return degree_; }
  std::span<const ExtendedReal> nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// p_n at every node.
  std::span<const ExtendedReal> row(int n) const {
    return {values_.data() + static_cast<std::size_t>(n) * nodes_.size(), nodes_.size()};
  }
  std::span<ExtendedReal> row(int n) {
    return {values_.data() + static_cast<std::size_t>(n) * nodes_.size(), nodes_.size()};
  }
  const ExtendedReal& at(int n, std::size_t j) const { return row(n)[j]; }

 private:
  std::vector<ExtendedReal> nodes_;
  int degree_;
  std::vector<ExtendedReal> values_;
};

/// Upward three-term recurrence
///   p_{-1} = 0, p_0 = 1/a_0, p_{n+1} = (x p_n - a_n p_{n-1}) / a_{n+1}.
/// Throws Error(Precondition) when N + 1 > valid_upto.
BasisEvaluation eval_basis(const RecurrenceCoefficients& coeffs, int degree,
                           std::span<const ExtendedReal> nodes);

/// max_{i,j <= N} |\int p_i p_j rho - delta_ij| under `rule`.
ExtendedReal gram_check(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                        int degree, const QuadratureRule& rule);

/// Predicted a_n ~ ((m-1)!^2 n / (2 v_m (2m-1)!))^{1/(2m)} for large n.
ExtendedReal magnus_asymptote(const EvenPolynomialPotential& pot, int n);

/// c_{n,k,r}, r = 0..k, with y^k p_n(y) = sum_r c_{n,k,r} p_{n+2r-k}(y).
/// Requires k <= n and n + k <= valid_upto - 1.
std::vector<ExtendedReal> xk_expansion_coeffs(const RecurrenceCoefficients& coeffs, int n, int k);

namespace detail {
/// Same recursion without the k <= n restriction: recurrence coefficients
/// with index <= 0 act as zero, which drops the p_{-1}, p_{-2}, ... terms.
std::vector<ExtendedReal> expansion_coefficients(const RecurrenceCoefficients& coeffs, int n, int k);
}  // namespace detail

/// Monomial coefficients of p_n (index = power), built from the recurrence.
std::vector<ExtendedReal> monomial_coefficients(const RecurrenceCoefficients& coeffs, int n);

/// Horner evaluation of a monomial-basis polynomial.
ExtendedReal eval_monomial(std::span<const ExtendedReal> coefficients, const ExtendedReal& x);

/// `x,P0,...,PN` rows with values rounded to double.
void write_basis_csv(std::ostream& out, const BasisEvaluation& basis);

}  // namespace expoly
