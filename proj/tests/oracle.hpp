#pragma once
// Arbitrary-precision reference values (MPFR) for the test suites.

#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "extended_real.hpp"

namespace oracle {

inline constexpr mpfr_prec_t kBits = 512;

/// Owning mpfr_t at kBits precision.
class Big {
 public:
  Big() { mpfr_init2(v_, kBits), mpfr_set_zero(v_, 1); }
  Big(double x) : Big() { mpfr_set_d(v_, x, MPFR_RNDN); }  // NOLINT(implicit)
  explicit Big(const expoly::ExtendedReal& x) : Big() {
    mpfr_set_d(v_, x.hi(), MPFR_RNDN);
    mpfr_add_d(v_, v_, x.lo(), MPFR_RNDN);
  }
  explicit Big(const char* decimal) : Big() { mpfr_set_str(v_, decimal, 10, MPFR_RNDN); }
  Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big& operator=(const Big& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Big operator+(const Big& a, const Big& b) { return apply(mpfr_add, a, b); }
  friend Big operator-(const Big& a, const Big& b) { return apply(mpfr_sub, a, b); }
  friend Big operator*(const Big& a, const Big& b) { return apply(mpfr_mul, a, b); }
  friend Big operator/(const Big& a, const Big& b) { return apply(mpfr_div, a, b); }

 private:
  template <class Op>
  static Big apply(Op op, const Big& a, const Big& b) {
    Big r;
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

template <class Fn>
Big unary(Fn fn, const Big& a) {
  Big r;
  fn(r.get(), a.get(), MPFR_RNDN);
  return r;
}

/// |x - ref| / |ref| (or |x| when ref = 0), as a double.
inline double rel_error(const expoly::ExtendedReal& x, const Big& ref) {
  Big d = Big(x) - ref;
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  if (mpfr_zero_p(ref.get())) return d.to_double();
  Big r = ref;
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return (d / r).to_double();
}

/// beta_0..beta_{n-1} by Gram-Schmidt orthonormalization of 1, x, ..., x^n
/// under the moment functional <x^i, x^j> = mu_{i+j}, carried out in MPFR.
/// beta_0 = mu_0 and beta_k = (lead(p_{k-1}) / lead(p_k))^2.
inline std::vector<Big> gram_schmidt_betas(const std::vector<expoly::ExtendedReal>& mu, int n) {
  std::vector<Big> m;
  for (const auto& v : mu) m.emplace_back(v);
  auto inner = [&](const std::vector<Big>& p, const std::vector<Big>& q) {
    Big acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) acc = acc + p[i] * q[j] * m.at(i + j);
    }
    return acc;
  };
  std::vector<std::vector<Big>> basis;
  std::vector<Big> betas;
  for (int k = 0; k < n; ++k) {
    std::vector<Big> p(k + 1);
    p[k] = Big(1.0);
    for (const auto& q : basis) {
      const Big c = inner(p, q);
      for (std::size_t i = 0; i < q.size(); ++i) p[i] = p[i] - c * q[i];
    }
    const Big norm = unary(mpfr_sqrt, inner(p, p));
    for (auto& c : p) c = c / norm;
    if (k == 0) {
      betas.push_back(m[0]);
    } else {
      const Big ratio = basis.back()[k - 1] / p[k];
      betas.push_back(ratio * ratio);
    }
    basis.push_back(std::move(p));
  }
  return betas;
}

}  // namespace oracle
