#include "extended_real.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

#include "error.hpp"

namespace expoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExtendedReal nonfinite(double v) { return ExtendedReal::raw(v, 0.0); }

ExtendedReal mul_double(const ExtendedReal& a, double b) {
  auto p = dd::two_prod(a.hi(), b);
  if (!std::isfinite(p.value)) return nonfinite(p.value);
  p.error += a.lo() * b;
  auto s = dd::quick_two_sum(p.value, p.error);
  return ExtendedReal::raw(s.value, s.error);
}

int nearest_int(double x) { return static_cast<int>(std::nearbyint(x)); }

}  // namespace

ExtendedReal ExtendedReal::from_pair(double hi, double lo) {
  if (!std::isfinite(hi) || !std::isfinite(lo)) return nonfinite(hi + lo);
  auto s = dd::two_sum(hi, lo);
  return raw(s.value, s.error);
}

ExtendedReal& ExtendedReal::operator+=(const ExtendedReal& b) {
  auto s = dd::two_sum(hi_, b.hi_);
  if (!std::isfinite(s.value)) {
    *this = nonfinite(s.value);
    return *this;
  }
  auto t = dd::two_sum(lo_, b.lo_);
  s.error += t.value;
  s = dd::quick_two_sum(s.value, s.error);
  s.error += t.error;
  s = dd::quick_two_sum(s.value, s.error);
  hi_ = s.value;
  lo_ = s.error;
  return *this;
}

ExtendedReal& ExtendedReal::operator-=(const ExtendedReal& b) { return *this += -b; }

ExtendedReal& ExtendedReal::operator*=(const ExtendedReal& b) {
  auto p = dd::two_prod(hi_, b.hi_);
  if (!std::isfinite(p.value)) {
    *this = nonfinite(p.value);
    return *this;
  }
  p.error += hi_ * b.lo_ + lo_ * b.hi_;
  p = dd::quick_two_sum(p.value, p.error);
  hi_ = p.value;
  lo_ = p.error;
  return *this;
}

ExtendedReal& ExtendedReal::operator/=(const ExtendedReal& b) {
  if (b.hi_ == 0.0) throw Error(ErrorCode::Domain, "division by zero");
  if (is_nan() || b.is_nan()) {
    *this = nonfinite(kNaN);
    return *this;
  }
  const double q1 = hi_ / b.hi_;
  if (!std::isfinite(q1)) {
    *this = nonfinite(q1);
    return *this;
  }
  ExtendedReal r = *this - mul_double(b, q1);
  const double q2 = r.hi_ / b.hi_;
  r -= mul_double(b, q2);
  const double q3 = r.hi_ / b.hi_;
  auto q = dd::quick_two_sum(q1, q2);
  *this = raw(q.value, q.error) + ExtendedReal(q3);
  return *this;
}

ExtendedReal abs(const ExtendedReal& a) { return a.hi() < 0.0 ? -a : a; }

ExtendedReal ldexp(const ExtendedReal& a, int e) {
  return ExtendedReal::raw(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e));
}

ExtendedReal floor(const ExtendedReal& a) {
  double hi = std::floor(a.hi());
  double lo = 0.0;
  if (hi == a.hi()) {
    lo = std::floor(a.lo());
    auto s = dd::quick_two_sum(hi, lo);
    return ExtendedReal::raw(s.value, s.error);
  }
  return ExtendedReal::raw(hi, lo);
}

ExtendedReal square(const ExtendedReal& a) {
  auto p = dd::two_prod(a.hi(), a.hi());
  if (!std::isfinite(p.value)) return nonfinite(p.value);
  p.error += 2.0 * a.hi() * a.lo();
  p.error += a.lo() * a.lo();
  auto s = dd::quick_two_sum(p.value, p.error);
  return ExtendedReal::raw(s.value, s.error);
}

ExtendedReal sqrt(const ExtendedReal& a) {
  if (a.is_nan()) return a;
  if (a.hi() < 0.0) throw Error(ErrorCode::Domain, "sqrt of negative value");
  if (a.hi() == 0.0) return ExtendedReal(0.0);
  if (!a.is_finite()) return a;
  // One Newton step from the native root doubles the number of good bits;
  // the correction term is evaluated in double-word arithmetic.
  ExtendedReal y(std::sqrt(a.hi()));
  y += (a - square(y)) / (y * 2.0);
  return y;
}

ExtendedReal exp(const ExtendedReal& a) {
  if (a.is_nan()) return a;
  if (a.hi() > 750.0 || a.hi() < -750.0) {
    throw Error(ErrorCode::Range, "exp argument outside [-750, 750]");
  }
  if (a.hi() > 709.782712893384) return nonfinite(kInf);
  if (a.hi() == 0.0) return ExtendedReal(1.0);

  // a = k ln2 + r with |r| <= ln2/2, then r is scaled by 2^-9 so that the
  // Taylor series of expm1 converges in a handful of terms.
  const int k = nearest_int(a.hi() / dd::kLn2.hi());
  ExtendedReal r = a - mul_double(dd::kLn2, static_cast<double>(k));
  r = ldexp(r, -9);

  ExtendedReal term = r;
  ExtendedReal sum = r;
  for (int i = 2; i <= 12; ++i) {
    term = term * r / ExtendedReal(i);
    sum += term;
    if (std::abs(term.hi()) < 1e-36) break;
  }
  // expm1(2x) = 2 expm1(x) + expm1(x)^2
  for (int i = 0; i < 9; ++i) sum = ldexp(sum, 1) + square(sum);
  sum += ExtendedReal(1.0);
  // Split the power of two so that subnormal results degrade gracefully.
  if (k < -1000) return ldexp(ldexp(sum, -1000), k + 1000);
  return ldexp(sum, k);
}

ExtendedReal log(const ExtendedReal& a) {
  if (a.is_nan()) return a;
  if (a.hi() <= 0.0) throw Error(ErrorCode::Domain, "log of non-positive value");
  if (!a.is_finite()) return a;
  ExtendedReal y(std::log(a.hi()));
  for (int i = 0; i < 2; ++i) y = y + a * exp(-y) - ExtendedReal(1.0);
  return y;
}

namespace {

ExtendedReal sin_kernel(const ExtendedReal& r) {
  const ExtendedReal r2 = square(r);
  ExtendedReal term = r;
  ExtendedReal sum = r;
  for (int i = 1; i < 40; ++i) {
    term = -term * r2 / ExtendedReal(static_cast<double>((2 * i) * (2 * i + 1)));
    sum += term;
    if (std::abs(term.hi()) < 1e-36) break;
  }
  return sum;
}

ExtendedReal cos_kernel(const ExtendedReal& r) {
  const ExtendedReal r2 = square(r);
  ExtendedReal term(1.0);
  ExtendedReal sum(1.0);
  for (int i = 1; i < 40; ++i) {
    term = -term * r2 / ExtendedReal(static_cast<double>((2 * i - 1) * (2 * i)));
    sum += term;
    if (std::abs(term.hi()) < 1e-36) break;
  }
  return sum;
}

// Reduces a to r in [-pi/4, pi/4] and returns the quadrant index mod 4.
int reduce_quadrant(const ExtendedReal& a, ExtendedReal& r) {
  const double z = std::nearbyint(a.hi() / dd::kTwoPi.hi());
  r = a - dd::kTwoPi * ExtendedReal(z);
  const int j = nearest_int(r.hi() / dd::kHalfPi.hi());
  r -= dd::kHalfPi * ExtendedReal(static_cast<double>(j));
  return ((j % 4) + 4) % 4;
}

}  // namespace

ExtendedReal sin(const ExtendedReal& a) {
  if (!a.is_finite()) return nonfinite(kNaN);
  ExtendedReal r;
  switch (reduce_quadrant(a, r)) {
    case 0: return sin_kernel(r);
    case 1: return cos_kernel(r);
    case 2: return -sin_kernel(r);
    default: return -cos_kernel(r);
  }
}

ExtendedReal cos(const ExtendedReal& a) {
  if (!a.is_finite()) return nonfinite(kNaN);
  ExtendedReal r;
  switch (reduce_quadrant(a, r)) {
    case 0: return cos_kernel(r);
    case 1: return -sin_kernel(r);
    case 2: return -cos_kernel(r);
    default: return sin_kernel(r);
  }
}

ExtendedReal pow(const ExtendedReal& base, int n) {
  if (n < 0) return ExtendedReal(1.0) / pow(base, -n);
  ExtendedReal result(1.0);
  ExtendedReal b = base;
  while (n > 0) {
    if (n & 1) result *= b;
    n >>= 1;
    if (n > 0) b = square(b);
  }
  return result;
}

ExtendedReal pow(const ExtendedReal& base, const ExtendedReal& p) {
  if (base.hi() <= 0.0) throw Error(ErrorCode::Domain, "pow requires a positive base");
  return exp(p * log(base));
}

ExtendedReal factorial(int n) {
  if (n < 0 || n > 300) throw Error(ErrorCode::Range, "factorial argument outside [0, 300]");
  ExtendedReal result(1.0);
  for (int i = 2; i <= n; ++i) result *= ExtendedReal(i);
  return result;
}

std::string to_string(const ExtendedReal& a, int digits) {
  if (a.is_nan()) return "nan";
  if (!a.is_finite()) return a.hi() > 0 ? "inf" : "-inf";
  digits = std::clamp(digits, 1, 34);

  std::string out;
  if (a.hi() < 0.0) out.push_back('-');
  ExtendedReal x = abs(a);
  int e = 0;
  std::vector<int> d(static_cast<std::size_t>(digits) + 1, 0);
  if (x.hi() != 0.0) {
    e = static_cast<int>(std::floor(std::log10(x.hi())));
    ExtendedReal r = e >= 0 ? x / pow(ExtendedReal(10.0), e)
                            : x * pow(ExtendedReal(10.0), -e);
    if (r.hi() >= 10.0) {
      r /= ExtendedReal(10.0);
      ++e;
    } else if (r.hi() < 1.0) {
      r *= ExtendedReal(10.0);
      --e;
    }
    for (auto& digit : d) {
      const double v = floor(r).to_double();
      digit = static_cast<int>(v);
      r = (r - ExtendedReal(v)) * ExtendedReal(10.0);
    }
    // Round on the guard digit, then normalize any out-of-range digits.
    if (d.back() >= 5) ++d[d.size() - 2];
    d.pop_back();
    for (std::size_t i = d.size() - 1; i > 0; --i) {
      if (d[i] < 0) {
        d[i] += 10;
        --d[i - 1];
      } else if (d[i] > 9) {
        d[i] -= 10;
        ++d[i - 1];
      }
    }
    if (d[0] > 9) {
      d.insert(d.begin(), 1);
      d[1] -= 10;
      d.pop_back();
      ++e;
    }
  } else {
    d.pop_back();
  }

  out.push_back(static_cast<char>('0' + d[0]));
  if (d.size() > 1) {
    out.push_back('.');
    for (std::size_t i = 1; i < d.size(); ++i) out.push_back(static_cast<char>('0' + d[i]));
  }
  out.push_back('e');
  out.push_back(e < 0 ? '-' : '+');
  const int ae = std::abs(e);
  if (ae < 10) out.push_back('0');
  out += std::to_string(ae);
  return out;
}

ExtendedReal parse_extended(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  ExtendedReal mantissa(0.0);
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * ExtendedReal(10.0) + ExtendedReal(c - '0');
      if (seen_point) --scale;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    int exponent = 0;
    bool exp_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      exp_digit = true;
      if (exponent > 100000) throw fail();
    }
    if (!exp_digit) throw fail();
    scale += exp_negative ? -exponent : exponent;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw fail();

  ExtendedReal value = scale >= 0 ? mantissa * pow(ExtendedReal(10.0), scale)
                                  : mantissa / pow(ExtendedReal(10.0), -scale);
  return negative ? -value : value;
}

}  // namespace expoly
