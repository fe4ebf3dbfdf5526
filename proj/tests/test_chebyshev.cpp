#include <doctest.h>

#include <sstream>

#include "chebyshev.hpp"
#include "error.hpp"
#include "moments.hpp"
#include "oracle.hpp"
#include "potential.hpp"

using expoly::ExtendedReal;
using expoly::MomentTable;

namespace {

MomentTable table_of(std::vector<double> mu) {
  MomentTable t;
  for (double v : mu) t.mu.emplace_back(v);
  return t;
}

}  // namespace

TEST_CASE("hermite coefficients from exact moments") {
  const auto c = expoly::chebyshev_betas(expoly::hermite_moments_closed_form(40), 20);
  CHECK(c.valid_upto == 20);
  CHECK(c.beta[0] == ExtendedReal(1.0));
  for (int k = 1; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(abs(c.beta[k] - ExtendedReal(k)) < ExtendedReal(1e-28));
    CHECK(abs(square(c.a[k]) - c.beta[k]) < ExtendedReal(1e-28) * c.beta[k]);
  }
  CHECK(expoly::beta_error_hermite(c, 10) < ExtendedReal(1e-28));
}

TEST_CASE("agreement with a Gram-Schmidt oracle") {
  const auto rule = expoly::QuadratureRule::standard();
  for (const auto& pot : {expoly::EvenPolynomialPotential::hermite(), expoly::EvenPolynomialPotential::double_well(),
                          expoly::EvenPolynomialPotential::parse("0.3,-1,0.5,0.25")}) {
    const auto mu = expoly::moments_quadrature(pot, 14, rule);
    const auto c = expoly::chebyshev_betas(mu, 7);
    const auto ref = oracle::gram_schmidt_betas(mu.mu, 7);
    for (int k = 0; k < 7; ++k) {
      CAPTURE(pot.to_text());
      CAPTURE(k);
      CHECK(oracle::rel_error(c.beta[k], ref[k]) < 1e-20);
    }
  }
}

TEST_CASE("scaling the moments scales beta_0 only") {
  const auto base = expoly::hermite_moments_closed_form(24);
  MomentTable scaled = base;
  for (auto& m : scaled.mu) m *= ExtendedReal(3.5);
  const auto c1 = expoly::chebyshev_betas(base, 12);
  const auto c2 = expoly::chebyshev_betas(scaled, 12);
  CHECK(c2.beta[0] == ExtendedReal(3.5) * c1.beta[0]);
  for (int k = 1; k < 12; ++k) {
    CAPTURE(k);
    CHECK(abs(c2.beta[k] - c1.beta[k]) <= ExtendedReal(1e-29) * c1.beta[k]);
  }
}

TEST_CASE("even path is bit-identical") {
  const auto rule = expoly::QuadratureRule::standard();
  const auto mu = expoly::moments_quadrature(expoly::EvenPolynomialPotential::double_well(), 120, rule);
  const auto full = expoly::chebyshev_betas(mu, 60);
  const auto even = expoly::chebyshev_betas(mu, 60, true);
  CHECK(full.valid_upto == even.valid_upto);
  for (int k = 0; k < 60; ++k) {
    CAPTURE(k);
    if (full.beta[k].is_nan()) {
      CHECK(even.beta[k].is_nan());
    } else {
      CHECK(full.beta[k].hi() == even.beta[k].hi());
      CHECK(full.beta[k].lo() == even.beta[k].lo());
    }
  }
}

TEST_CASE("non-positive beta marks the valid prefix") {
  // mu_0 mu_4 - mu_2^2 < 0: no positive measure has these moments.
  const auto c = expoly::chebyshev_betas(table_of({1, 0, 1, 0, 0.5, 0}), 3);
  CHECK(c.valid_upto == 2);
  CHECK(c.beta[2] < ExtendedReal(0.0));
  CHECK(c.a[2].is_nan());
  CHECK(!c.diagnostic.empty());
}

TEST_CASE("chebyshev preconditions") {
  CHECK_THROWS_AS(expoly::chebyshev_betas(table_of({1, 0, 1}), 3), expoly::Error);
  CHECK_THROWS_AS(expoly::chebyshev_betas(table_of({1, 0.1, 1, 0, 3}), 3), expoly::Error);
  CHECK_THROWS_AS(expoly::chebyshev_betas(table_of({1}), 0), expoly::Error);
  // 2n - 1 moments suffice; mu_{2n-1} is odd and zero.
  CHECK_NOTHROW(expoly::chebyshev_betas(table_of({1, 0, 1, 0, 3}), 3));
}

TEST_CASE("hermite error reporting") {
  auto c = expoly::hermite_exact_coefficients(10);
  CHECK(expoly::beta_error_hermite(c) == ExtendedReal(0.0));
  c.beta[7] = ExtendedReal(-1.0);
  c.valid_upto = 7;
  CHECK(expoly::beta_error_hermite(c) == ExtendedReal(8.0));
  CHECK(expoly::beta_error_hermite(c, 6) == ExtendedReal(0.0));
  c.beta[8] = ExtendedReal(std::numeric_limits<double>::quiet_NaN());
  CHECK(std::isinf(expoly::beta_error_hermite(c).hi()));
}

TEST_CASE("recurrence csv") {
  std::ostringstream out;
  expoly::write_recurrence_csv(out, expoly::hermite_exact_coefficients(3));
  CHECK(out.str().rfind("k,beta_k,a_k\n0,", 0) == 0);
}
