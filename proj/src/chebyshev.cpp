#include "chebyshev.hpp"

#include <limits>
#include <ostream>

#include "error.hpp"

namespace expoly {

namespace {

const ExtendedReal kNaN(std::numeric_limits<double>::quiet_NaN());

void fill_roots(RecurrenceCoefficients& c) {
  c.a.resize(c.beta.size());
  for (std::size_t k = 0; k < c.beta.size(); ++k) {
    c.a[k] = c.beta[k] > ExtendedReal(0.0) ? sqrt(c.beta[k]) : kNaN;
  }
}

}  // namespace

RecurrenceCoefficients chebyshev_betas(const MomentTable& moments, int n, bool even_path) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "coefficient count must be positive");
  if (static_cast<int>(moments.size()) < 2 * n - 1) {
    throw Error(ErrorCode::Precondition, "Chebyshev algorithm needs " + std::to_string(2 * n - 1) +
                                             " moments, got " + std::to_string(moments.size()));
  }
  for (std::size_t k = 1; k < moments.size(); k += 2) {
    if (!(moments[k] == ExtendedReal(0.0))) {
      throw Error(ErrorCode::Precondition, "odd moments must vanish for a symmetric weight");
    }
  }

  const std::size_t width = 2 * static_cast<std::size_t>(n);
  std::vector<ExtendedReal> older(width, ExtendedReal(0.0));  // sigma_{k-2, .}
  std::vector<ExtendedReal> prev(width, ExtendedReal(0.0));   // sigma_{k-1, .}
  std::vector<ExtendedReal> cur(width, ExtendedReal(0.0));
  for (std::size_t l = 0; l < width && l < moments.size(); ++l) prev[l] = moments[l];

  RecurrenceCoefficients out;
  out.beta.assign(n, kNaN);
  out.beta[0] = moments[0];
  out.valid_upto = n;
  if (!(out.beta[0] > ExtendedReal(0.0))) {
    out.valid_upto = 0;
    out.diagnostic = "mu_0 = " + to_string(out.beta[0], 6) + " is not positive";
  }

  for (int k = 1; k < n; ++k) {
    const ExtendedReal& pivot = prev[k - 1];
    if (pivot == ExtendedReal(0.0) || pivot.is_nan()) {
      if (out.valid_upto > k) {
        out.valid_upto = k;
        out.diagnostic = "zero pivot sigma_{" + std::to_string(k - 1) + "," + std::to_string(k - 1) + "}";
      }
      break;
    }
    const ExtendedReal& b = out.beta[k - 1];
    const int last = 2 * n - k - 1;
    for (int l = k; l <= last; ++l) {
      if (even_path && (k + l) % 2 != 0) continue;
      cur[l] = prev[l + 1] - b * older[l];
    }
    out.beta[k] = cur[k] / pivot;
    if (out.valid_upto > k && !(out.beta[k] > ExtendedReal(0.0))) {
      out.valid_upto = k;
      out.diagnostic = "beta_" + std::to_string(k) + " = " + to_string(out.beta[k], 6) + " is not positive";
    }
    std::swap(older, prev);
    std::swap(prev, cur);
  }

  fill_roots(out);
  return out;
}

RecurrenceCoefficients hermite_exact_coefficients(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "coefficient count must be positive");
  RecurrenceCoefficients out;
  out.beta.resize(n);
  out.beta[0] = ExtendedReal(1.0);
  for (int k = 1; k < n; ++k) out.beta[k] = ExtendedReal(k);
  out.valid_upto = n;
  fill_roots(out);
  return out;
}

ExtendedReal beta_error_hermite(const RecurrenceCoefficients& coeffs, int upto) {
  int limit = coeffs.size();
  if (upto >= 0) limit = std::min(limit, upto + 1);
  ExtendedReal worst(0.0);
  for (int k = 0; k < limit; ++k) {
    // Entries past a zero pivot are NaN and count as an unbounded error.
    if (coeffs.beta[k].is_nan()) return ExtendedReal(std::numeric_limits<double>::infinity());
    const ExtendedReal e = abs(coeffs.beta[k] - ExtendedReal(k == 0 ? 1 : k));
    if (e > worst) worst = e;
  }
  return worst;
}

void write_recurrence_csv(std::ostream& out, const RecurrenceCoefficients& coeffs) {
  out << "k,beta_k,a_k\n";
  for (int k = 0; k < coeffs.size(); ++k) {
    out << k << ',' << to_string(coeffs.beta[k]) << ',' << to_string(coeffs.a[k]) << '\n';
  }
}

}  // namespace expoly
