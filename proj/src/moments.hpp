#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "extended_real.hpp"
#include "potential.hpp"
#include "quadrature.hpp"

namespace expoly {

enum class MomentMethod { Quadrature, Recursion, ClosedFormHermite };

std::string to_string(MomentMethod method);
/// "quad", "rec" or "closed".
MomentMethod parse_moment_method(const std::string& text);

/// mu_k = \int x^k rho(x) dx for k = 0..size()-1.  Odd entries are exactly
/// zero for every method.
struct MomentTable {
  std::vector<ExtendedReal> mu;
  MomentMethod method = MomentMethod::Quadrature;
  /// Quadrature used for the table (or for the recursion seeds).
  ExtendedReal halfwidth{0.0};
  int panels = 0;
  /// First even index whose generated value is not strictly positive.
  std::optional<int> breakdown_index;

  std::size_t size() const { return mu.size(); }
  const ExtendedReal& operator[](std::size_t k) const { return mu[k]; }
};

/// Brute-force moments mu_0..mu_{count-1} by the composite rule.  Throws
/// Error(Precondition) when rho(L) L^k is not below 2^-110 mu_k for the
/// largest even k, i.e. the interval is too small for the requested count.
MomentTable moments_quadrature(const EvenPolynomialPotential& pot, int count,
                               const QuadratureRule& rule);

/// Forward recursion obtained by integrating (x^{2k+1} rho)' = 0:
///   2 m v_m mu_{2(m+k)} = (2k+1) mu_{2k} - sum_{p=1}^{m-1} 2p v_p mu_{2(p+k)}.
/// `even_seeds` holds mu_0, mu_2, ..., mu_{2m-2}.  A non-positive generated
/// moment is recorded in breakdown_index; generation continues past it.
MomentTable moments_recursion(const EvenPolynomialPotential& pot,
                              const std::vector<ExtendedReal>& even_seeds, int count);

/// Seeds from `rule`, then moments_recursion.
MomentTable moments_recursion(const EvenPolynomialPotential& pot, int count,
                              const QuadratureRule& rule);

/// mu_{2k} = (2k)! / (2^k k!) for the standard Gaussian; count <= 600.
/// Entries past the double range are +infinity.
MomentTable hermite_moments_closed_form(int count);

/// Throws Error(Precondition) unless odd entries are zero and even entries
/// are positive.
void check_moment_table(const MomentTable& table);

/// `k,mu_k,method` rows with a header.
void write_moments_csv(std::ostream& out, const MomentTable& table);

}  // namespace expoly
