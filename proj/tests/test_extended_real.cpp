#include <doctest.h>

#include <random>

#include "error.hpp"
#include "extended_real.hpp"
#include "oracle.hpp"

using expoly::ExtendedReal;
using oracle::Big;

namespace {

// 2^-104: a few ulps of the 106-bit significand.
constexpr double kTight = 4.93e-32;

Big mp_exp(const Big& a) { return oracle::unary(mpfr_exp, a); }

}  // namespace

TEST_CASE("two_sum and two_prod are exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-60, 60);
  for (int i = 0; i < 2000; ++i) {
    const double a = std::ldexp(mant(rng), expo(rng));
    const double b = std::ldexp(mant(rng), expo(rng));
    const auto s = expoly::dd::two_sum(a, b);
    const auto p = expoly::dd::two_prod(a, b);
    CHECK(mpfr_cmp((Big(s.value) + Big(s.error)).get(), (Big(a) + Big(b)).get()) == 0);
    CHECK(mpfr_cmp((Big(p.value) + Big(p.error)).get(), (Big(a) * Big(b)).get()) == 0);
  }
}

TEST_CASE("1e16 + 1 is held exactly") {
  const ExtendedReal x = ExtendedReal(1e16) + ExtendedReal(1.0);
  CHECK(x.hi() == 1e16);
  CHECK(x.lo() == 1.0);
  CHECK((x - ExtendedReal(1e16)) == ExtendedReal(1.0));
}

TEST_CASE("division matches MPFR") {
  const ExtendedReal third = ExtendedReal(1.0) / ExtendedReal(3.0);
  CHECK(oracle::rel_error(third, Big(1.0) / Big(3.0)) < kTight);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 500; ++i) {
    const ExtendedReal a = ExtendedReal(u(rng)) / ExtendedReal(7.0);
    const ExtendedReal b = ExtendedReal(u(rng)) / ExtendedReal(13.0);
    CHECK(oracle::rel_error(a / b, Big(a) / Big(b)) < kTight);
    CHECK(oracle::rel_error(a * b, Big(a) * Big(b)) < kTight);
  }
}

TEST_CASE("elementary functions match MPFR") {
  CHECK(oracle::rel_error(expoly::exp(ExtendedReal(1.0)), mp_exp(Big(1.0))) < kTight);
  CHECK(oracle::rel_error(expoly::dd::kE, mp_exp(Big(1.0))) < kTight);
  Big pi;
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  CHECK(oracle::rel_error(expoly::dd::kPi, pi) < kTight);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ue(-300.0, 300.0);
  for (int i = 0; i < 300; ++i) {
    const ExtendedReal x = ExtendedReal(ue(rng)) / ExtendedReal(3.0);
    CAPTURE(x.hi());
    CHECK(oracle::rel_error(expoly::exp(x), mp_exp(Big(x))) < 1e-30);
  }
  std::uniform_real_distribution<double> up(1e-6, 1e6);
  for (int i = 0; i < 300; ++i) {
    const ExtendedReal x = ExtendedReal(up(rng)) / ExtendedReal(3.0);
    CAPTURE(x.hi());
    const Big lx = oracle::unary(mpfr_log, Big(x));
    CHECK(oracle::rel_error(expoly::log(x), lx) < 1e-30);
    CHECK(oracle::rel_error(expoly::sqrt(x), oracle::unary(mpfr_sqrt, Big(x))) < kTight);
  }
  std::uniform_real_distribution<double> ut(-100.0, 100.0);
  for (int i = 0; i < 300; ++i) {
    const ExtendedReal x = ExtendedReal(ut(rng)) / ExtendedReal(3.0);
    CAPTURE(x.hi());
    // Absolute error: sin and cos pass through zero.
    CHECK(std::abs((Big(expoly::sin(x)) - oracle::unary(mpfr_sin, Big(x))).to_double()) < 1e-30);
    CHECK(std::abs((Big(expoly::cos(x)) - oracle::unary(mpfr_cos, Big(x))).to_double()) < 1e-30);
  }
}

TEST_CASE("pow and factorial") {
  CHECK(expoly::pow(ExtendedReal(2.0), 100) == expoly::ldexp(ExtendedReal(1.0), 100));
  CHECK(expoly::pow(ExtendedReal(2.0), -3) == ExtendedReal(0.125));
  const ExtendedReal r = expoly::pow(ExtendedReal(12.0), ExtendedReal(0.25));
  Big ref;
  mpfr_rootn_ui(ref.get(), Big(12.0).get(), 4, MPFR_RNDN);
  CHECK(oracle::rel_error(r, ref) < 1e-30);

  Big f(1.0);
  for (int n = 1; n <= 30; ++n) f = f * Big(static_cast<double>(n));
  CHECK(oracle::rel_error(expoly::factorial(30), f) < kTight);
  CHECK(expoly::factorial(0) == ExtendedReal(1.0));
  CHECK(std::isinf(expoly::factorial(171).hi()));
}

TEST_CASE("decimal text round trip") {
  const ExtendedReal third = ExtendedReal(1.0) / ExtendedReal(3.0);
  const std::string s = expoly::to_string(third);
  CHECK(s.rfind("3.333333333333333333333333333333", 0) == 0);
  CHECK(oracle::rel_error(expoly::parse_extended(s), Big(third)) < 1e-31);
  const ExtendedReal parsed = expoly::parse_extended("1.97373215008982377898414875123739712733985");
  CHECK(oracle::rel_error(parsed, Big("1.97373215008982377898414875123739712733985")) < kTight);
  CHECK(expoly::parse_extended("-1.25e-3") == ExtendedReal(-1.25) / ExtendedReal(1000.0));
}

TEST_CASE("domain and range errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const expoly::Error& e) {
      return static_cast<int>(e.code());
    }
    return 0;
  };
  using expoly::ErrorCode;
  CHECK(code_of([] { expoly::sqrt(ExtendedReal(-1.0)); }) == static_cast<int>(ErrorCode::Domain));
  CHECK(code_of([] { expoly::log(ExtendedReal(0.0)); }) == static_cast<int>(ErrorCode::Domain));
  CHECK(code_of([] { (void)(ExtendedReal(1.0) / ExtendedReal(0.0)); }) == static_cast<int>(ErrorCode::Domain));
  CHECK(code_of([] { expoly::exp(ExtendedReal(800.0)); }) == static_cast<int>(ErrorCode::Range));
  CHECK(code_of([] { expoly::factorial(301); }) == static_cast<int>(ErrorCode::Range));
  CHECK(code_of([] { expoly::parse_extended("1.2.3"); }) == static_cast<int>(ErrorCode::InvalidArgument));
}
