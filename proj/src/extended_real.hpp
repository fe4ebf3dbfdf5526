#pragma once

// Double-word ("double-double") real arithmetic.
//
// A value is the unevaluated sum hi + lo of two IEEE doubles with
// |lo| <= ulp(hi)/2, giving a 106-bit significand (about 32 decimal digits)
// with the exponent range of a double.  The algorithms follow the classical
// error-free transformations (Dekker, Knuth) with fused multiply-add.

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace expoly {

class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double x) : hi_(x), lo_(0.0) {}  // NOLINT(implicit)
  constexpr ExtendedReal(int x) : hi_(x), lo_(0.0) {}     // NOLINT(implicit)

  /// Builds hi + lo, renormalizing the pair.
  static ExtendedReal from_pair(double hi, double lo);

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  constexpr double to_double() const { return hi_ + lo_; }

  bool is_finite() const { return std::isfinite(hi_); }
  bool is_nan() const { return std::isnan(hi_); }

  ExtendedReal operator-() const { return raw(-hi_, -lo_); }

  ExtendedReal& operator+=(const ExtendedReal& b);
  ExtendedReal& operator-=(const ExtendedReal& b);
  ExtendedReal& operator*=(const ExtendedReal& b);
  ExtendedReal& operator/=(const ExtendedReal& b);

  friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) { return a += b; }
  friend ExtendedReal operator-(ExtendedReal a, const ExtendedReal& b) { return a -= b; }
  friend ExtendedReal operator*(ExtendedReal a, const ExtendedReal& b) { return a *= b; }
  friend ExtendedReal operator/(ExtendedReal a, const ExtendedReal& b) { return a /= b; }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

  /// Unchecked constructor for an already normalized pair.
  static constexpr ExtendedReal raw(double hi, double lo) {
    ExtendedReal r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

namespace dd {

// Error-free transformations on native doubles.
struct TwoWord {
  double value;
  double error;
};

inline TwoWord two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline TwoWord quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline TwoWord two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Constants accurate to the full double-word precision.
inline constexpr ExtendedReal kPi = ExtendedReal::raw(3.141592653589793116e+00, 1.224646799147353207e-16);
inline constexpr ExtendedReal kTwoPi = ExtendedReal::raw(6.283185307179586232e+00, 2.449293598294706414e-16);
inline constexpr ExtendedReal kHalfPi = ExtendedReal::raw(1.570796326794896558e+00, 6.123233995736766036e-17);
inline constexpr ExtendedReal kLn2 = ExtendedReal::raw(6.931471805599452862e-01, 2.319046813846299558e-17);
inline constexpr ExtendedReal kE = ExtendedReal::raw(2.718281828459045091e+00, 1.445646891729250158e-16);

}  // namespace dd

ExtendedReal abs(const ExtendedReal& a);
ExtendedReal ldexp(const ExtendedReal& a, int e);
ExtendedReal floor(const ExtendedReal& a);
ExtendedReal square(const ExtendedReal& a);

/// Throws Error(Domain) for negative input.
ExtendedReal sqrt(const ExtendedReal& a);

/// Throws Error(Range) outside [-750, 750]; inputs above the overflow
/// threshold (~709.78) return +infinity, inputs below ~-708 lose precision
/// gradually as the result becomes subnormal.
ExtendedReal exp(const ExtendedReal& a);

/// Natural logarithm; throws Error(Domain) for a <= 0.
ExtendedReal log(const ExtendedReal& a);

ExtendedReal sin(const ExtendedReal& a);
ExtendedReal cos(const ExtendedReal& a);

ExtendedReal pow(const ExtendedReal& base, int n);
/// base^p for base > 0.
ExtendedReal pow(const ExtendedReal& base, const ExtendedReal& p);

/// n!, exact while it fits in 106 bits and rounded afterwards.  Values past
/// 170! overflow to +infinity; throws Error(Range) for n < 0 or n > 300.
ExtendedReal factorial(int n);

/// Scientific notation with `digits` significant digits (default 32).
std::string to_string(const ExtendedReal& a, int digits = 32);

/// Parses a decimal literal such as "-1.25e-3" at full precision.
/// Throws Error(InvalidArgument) on malformed input.
ExtendedReal parse_extended(std::string_view text);

}  // namespace expoly
