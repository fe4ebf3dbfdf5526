#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "extended_real.hpp"

namespace expoly {

/// phi(x) = sum_{p=0}^{m} v_p x^{2p} with m >= 1 and v_m > 0.  Only even
/// powers are representable, so every instance is an even potential; the
/// weight it defines is rho = exp(-phi).
class EvenPolynomialPotential {
 public:
  /// `coefficients` holds v_0..v_m.  Throws Error(InvalidArgument) when
  /// m < 1 or v_m <= 0.
  explicit EvenPolynomialPotential(std::vector<ExtendedReal> coefficients);

  /// phi(x) = (x^2 + ln 2pi) / 2, whose weight is the standard Gaussian.
  static EvenPolynomialPotential hermite();
  /// phi(x) = (x-1)^2 (x+1)^2 = x^4 - 2x^2 + 1.
  static EvenPolynomialPotential double_well();

  /// Accepts a preset name ("hermite", "doublewell") or a comma-separated
  /// coefficient list "v0,v1,...,vm".
  static EvenPolynomialPotential parse(std::string_view text);

  int half_degree() const { return static_cast<int>(v_.size()) - 1; }
  const std::vector<ExtendedReal>& coefficients() const { return v_; }
  const ExtendedReal& leading() const { return v_.back(); }
  const std::string& name() const { return name_; }

  ExtendedReal phi(const ExtendedReal& x) const;
  ExtendedReal phi_prime(const ExtendedReal& x) const;

  /// exp(-phi(x)).  Returns exactly zero once phi exceeds 750, where the
  /// weight is far below the smallest subnormal double.
  ExtendedReal weight(const ExtendedReal& x) const;

  /// "v0,v1,...,vm" with full-precision decimals.
  std::string to_text() const;

 private:
  std::vector<ExtendedReal> v_;
  std::string name_;
};

}  // namespace expoly
