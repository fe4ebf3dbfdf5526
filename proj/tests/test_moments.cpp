#include <doctest.h>

#include <sstream>

#include "error.hpp"
#include "moments.hpp"
#include "oracle.hpp"
#include "potential.hpp"
#include "quadrature.hpp"

using expoly::ExtendedReal;
using expoly::EvenPolynomialPotential;
using expoly::QuadratureRule;

namespace {

// Double-well moments from a 60-digit mpmath quadrature of exp(-(x^2-1)^2).
const char* const kDoubleWellMu0 = "1.97373215008982377898414875123739712733985022833945854076591";
const char* const kDoubleWellMu2 = "1.64361654078749527305536511655494118060238827368847511214641";

oracle::Big double_factorial(int k) {
  oracle::Big r(1.0);
  for (int i = 2 * k - 1; i > 1; i -= 2) r = r * oracle::Big(static_cast<double>(i));
  return r;
}

}  // namespace

TEST_CASE("hermite moments by every method") {
  const auto rule = QuadratureRule::standard();
  const auto h = EvenPolynomialPotential::hermite();
  const auto quad = expoly::moments_quadrature(h, 80, rule);
  const auto rec = expoly::moments_recursion(h, 80, rule);
  const auto closed = expoly::hermite_moments_closed_form(80);
  CHECK(closed[0] == ExtendedReal(1.0));
  CHECK(closed[2] == ExtendedReal(1.0));
  CHECK(closed[4] == ExtendedReal(3.0));
  CHECK(closed[6] == ExtendedReal(15.0));
  for (int k = 0; k < 40; ++k) {
    CAPTURE(k);
    const auto ref = double_factorial(k);
    CHECK(oracle::rel_error(closed[2 * k], ref) < 1e-31);
    CHECK(oracle::rel_error(rec[2 * k], ref) < 1e-29);
    CHECK(oracle::rel_error(quad[2 * k], ref) < 1e-27);
    CHECK(quad[2 * k + 1] == ExtendedReal(0.0));
    CHECK(rec[2 * k + 1] == ExtendedReal(0.0));
  }
  CHECK(!rec.breakdown_index);
  CHECK_NOTHROW(expoly::check_moment_table(quad));
}

TEST_CASE("double-well moments against a high-precision oracle") {
  const auto rule = QuadratureRule::standard();
  const auto d = EvenPolynomialPotential::double_well();
  const auto quad = expoly::moments_quadrature(d, 40, rule);
  CHECK(oracle::rel_error(quad[0], oracle::Big(kDoubleWellMu0)) < 1e-29);
  CHECK(oracle::rel_error(quad[2], oracle::Big(kDoubleWellMu2)) < 1e-28);

  // Seeds taken from the oracle make the recursion reproduce them exactly.
  const auto rec = expoly::moments_recursion(
      d, {expoly::parse_extended(kDoubleWellMu0), expoly::parse_extended(kDoubleWellMu2)}, 40);
  // Integrating x^3 phi'(x) rho by parts: 4 mu_6 - 4 mu_4 = 3 mu_2.
  const ExtendedReal lhs = ExtendedReal(4.0) * (rec[6] - rec[4]);
  CHECK(abs(lhs - ExtendedReal(3.0) * rec[2]) < ExtendedReal(1e-30));
  for (int k = 0; k < 20; ++k) {
    CAPTURE(k);
    CHECK(abs(rec[2 * k] - quad[2 * k]) / quad[2 * k] < ExtendedReal(1e-20));
  }
}

TEST_CASE("moment preconditions") {
  const auto d = EvenPolynomialPotential::double_well();
  // A narrow interval leaves a visible tail for high moments.
  CHECK_THROWS_AS(expoly::moments_quadrature(d, 60, QuadratureRule(ExtendedReal(2.0), 50)), expoly::Error);
  CHECK_THROWS_AS(expoly::moments_recursion(d, {ExtendedReal(1.0)}, 10), expoly::Error);
  CHECK_THROWS_AS(expoly::hermite_moments_closed_form(-1), expoly::Error);
  expoly::MomentTable bad;
  bad.mu = {ExtendedReal(1.0), ExtendedReal(0.5), ExtendedReal(1.0)};
  CHECK_THROWS_AS(expoly::check_moment_table(bad), expoly::Error);
}

TEST_CASE("recursion records the first non-positive moment") {
  // phi = x^2 + x^4 gives 4 mu_{2k+4} = (2k+1) mu_{2k} - 2 mu_{2k+2}; an
  // inflated mu_2 drives mu_4 negative immediately.
  const auto p = EvenPolynomialPotential::parse("0,1,1");
  const auto rec = expoly::moments_recursion(p, {ExtendedReal(1.0), ExtendedReal(1.0)}, 20);
  REQUIRE(rec.breakdown_index);
  CHECK(*rec.breakdown_index == 4);
  CHECK(rec[4] == ExtendedReal(-0.25));
  CHECK_THROWS_AS(expoly::moments_recursion(p, {ExtendedReal(1.0), ExtendedReal(-1.0)}, 20), expoly::Error);
}

TEST_CASE("moments csv") {
  const auto table = expoly::hermite_moments_closed_form(4);
  std::ostringstream out;
  expoly::write_moments_csv(out, table);
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "k,mu_k,method");
  CHECK(first.rfind("0,1.0", 0) == 0);
  CHECK(first.find(",closed") != std::string::npos);
}
