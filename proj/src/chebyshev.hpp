#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "extended_real.hpp"
#include "moments.hpp"

namespace expoly {

/// beta_k = a_k^2 for k = 0..size()-1, where beta_0 = mu_0 and
/// x p_k = a_{k+1} p_{k+1} + a_k p_{k-1} for the orthonormal family.
struct RecurrenceCoefficients {
  std::vector<ExtendedReal> beta;
  /// sqrt(beta_k) where beta_k > 0, NaN otherwise.
  std::vector<ExtendedReal> a;
  /// Entries below this index are trustworthy (beta_k > 0).
  int valid_upto = 0;
  /// Why generation stopped short of size(); empty when valid_upto == size().
  std::string diagnostic;

  int size() const { return static_cast<int>(beta.size()); }
};

/// Chebyshev algorithm for a symmetric measure:
///   sigma_{-1,l} = 0, sigma_{0,l} = mu_l, beta_0 = mu_0,
///   sigma_{k,l} = sigma_{k-1,l+1} - beta_{k-1} sigma_{k-2,l},
///   beta_k = sigma_{k,k} / sigma_{k-1,k-1}.
/// Needs mu_0..mu_{2n-2} (mu_{2n-1} is odd and taken as zero when absent).
/// Breakdown (zero pivot or beta_k <= 0) sets valid_upto and the diagnostic
/// instead of throwing; after a zero pivot the remaining entries are NaN.
///
/// With `even_path` the sigma entries with k + l odd, which vanish
/// identically, are skipped.  Both paths give bit-identical betas.
RecurrenceCoefficients chebyshev_betas(const MomentTable& moments, int n, bool even_path = false);

/// beta_0 = 1, beta_k = k: exact coefficients of the standard Gaussian.
RecurrenceCoefficients hermite_exact_coefficients(int n);

/// max(|beta_0 - 1|, max_{1 <= k <= upto} |beta_k - k|) over the whole
/// table when `upto` < 0.  Non-positive betas count with their actual
/// deviation; NaN entries after a zero pivot make the result +infinity.
ExtendedReal beta_error_hermite(const RecurrenceCoefficients& coeffs, int upto = -1);

/// `k,beta_k,a_k` rows with a header.
void write_recurrence_csv(std::ostream& out, const RecurrenceCoefficients& coeffs);

}  // namespace expoly
