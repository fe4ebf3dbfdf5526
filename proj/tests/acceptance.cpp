// Acceptance suite: one PASS/FAIL line per criterion with the measured values.
//
// Usage: acceptance [--expect-fail=3,7]
// Exit status is 0 when the set of failing criteria equals the expected set,
// so a known, documented failure keeps ctest green while any change in
// outcome (new failure or unexpected pass) is reported.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chebyshev.hpp"
#include "moments.hpp"
#include "ode_coeffs.hpp"
#include "oracle.hpp"
#include "orthopoly.hpp"
#include "projection.hpp"

using namespace expoly;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(const ExtendedReal& v) { return to_string(v, 3); }

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Fixture {
  EvenPolynomialPotential hermite = EvenPolynomialPotential::hermite();
  EvenPolynomialPotential doublewell = EvenPolynomialPotential::double_well();
  QuadratureRule rule = QuadratureRule::standard();
  MomentTable h_quad = moments_quadrature(hermite, 160, rule);
  MomentTable h_rec = moments_recursion(hermite, 160, rule);
  MomentTable d_quad = moments_quadrature(doublewell, 140, rule);
  MomentTable d_rec = moments_recursion(doublewell, 140, rule);
};

std::vector<ExtendedReal> grid(double lo, double hi, int count) {
  std::vector<ExtendedReal> xs;
  for (int i = 0; i < count; ++i) {
    xs.push_back(ExtendedReal(lo) + ExtendedReal(hi - lo) * ExtendedReal(i) / ExtendedReal(count - 1));
  }
  return xs;
}

Outcome criterion1(const Fixture& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto moments = moments_recursion(f.hermite, 62, f.rule);
  const auto c = chebyshev_betas(moments, 31);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const ExtendedReal err = beta_error_hermite(c, 30);
  return {err <= ExtendedReal(1e-18) && secs < 10.0,
          "recurrence moments: max_{k<=30}|beta_k - k| = " + sci(err) + " (tol 1e-18), " + fixed(secs) + " s"};
}

Outcome criterion2(const Fixture& f) {
  const auto c = chebyshev_betas(f.h_quad, 71);
  const ExtendedReal err = beta_error_hermite(c, 70);
  return {err > ExtendedReal(1e-2), "brute-force moments: max_{k<=70}|beta_k - k| = " + sci(err) +
                                        " (must exceed 1e-2), valid_upto = " + std::to_string(c.valid_upto)};
}

Outcome criterion3(const Fixture& f) {
  const auto cq = chebyshev_betas(f.d_quad, 60);
  double lo = 1e300, hi = -1e300;
  bool in_band = cq.valid_upto > 55;
  for (int n = 30; n <= 55 && n < cq.valid_upto; ++n) {
    const double r = (cq.a[n] / magnus_asymptote(f.doublewell, n)).to_double();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    in_band = in_band && r >= 0.9 && r <= 1.1;
  }
  const auto cr = chebyshev_betas(f.d_rec, 60);
  const bool rec_invalid = cr.valid_upto <= 45;
  std::string detail = "(a) brute-force sqrt(beta_n)/(n/12)^(1/4) on [30,55] in [" + fixed(lo, 4) + ", " +
                       fixed(hi, 4) + "] " + (in_band ? "ok" : "NOT within [0.9,1.1]") +
                       "; (b) recurrence first invalid beta at n = " +
                       (cr.valid_upto < cr.size() ? std::to_string(cr.valid_upto) : std::string("none below 60")) +
                       " " + (rec_invalid ? "ok" : "(needs <= 45)");
  if (f.d_rec.breakdown_index) detail += ", moment breakdown at " + std::to_string(*f.d_rec.breakdown_index);
  return {in_band && rec_invalid, detail};
}

Outcome criterion4(const Fixture& f) {
  const auto exact = hermite_exact_coefficients(41);
  const ExtendedReal gh = gram_check(f.hermite, exact, 40, f.rule);
  const ExtendedReal gh_cheb = gram_check(f.hermite, chebyshev_betas(f.h_rec, 41), 40, f.rule);
  const auto cd = chebyshev_betas(f.d_quad, 31);
  const ExtendedReal gd = gram_check(f.doublewell, cd, 30, f.rule);
  return {gh <= ExtendedReal(1e-18) && gd <= ExtendedReal(1e-10),
          "Hermite N=40 (beta_k = k basis) " + sci(gh) + " (tol 1e-18); double well N=30 " + sci(gd) +
              " (tol 1e-10); info: Hermite N=40 on Chebyshev-derived basis " + sci(gh_cheb)};
}

Outcome criterion5(const Fixture& f) {
  const auto xs = grid(-3.0, 3.0, 121);
  std::string text;
  bool pass = true;
  for (const auto* pot : {&f.hermite, &f.doublewell}) {
    // Recursion-based moments obey the same integration-by-parts relations
    // the equation is built from; brute-force betas add quadrature noise
    // amplified by the Chebyshev algorithm and are reported alongside.
    const auto& moments = pot == &f.hermite ? f.h_rec : f.d_rec;
    const auto c = chebyshev_betas(moments, 44);
    const auto n0 = detect_N0(*pot, c);
    ExtendedReal worst(0.0);
    if (!n0 || *n0 > 40) {
      pass = false;
    } else {
      for (int n = std::max(1, *n0); n <= 40; ++n) worst = std::max(worst, ode_residual(*pot, c, n, xs));
    }
    pass = pass && worst <= ExtendedReal(1e-10);
    const auto cq = chebyshev_betas(pot == &f.hermite ? f.h_quad : f.d_quad, 44);
    ExtendedReal worst_quad(0.0);
    for (int n = 1; n <= 40; ++n) worst_quad = std::max(worst_quad, ode_residual(*pot, cq, n, xs));
    text += pot->name() + ": N_0 = " + (n0 ? std::to_string(*n0) : std::string("none")) +
              ", max residual on [N_0,40] = " + sci(worst) + " (info: brute-force betas " + sci(worst_quad) + "); ";
    if (pot == &f.doublewell) {
      ExtendedReal diff(0.0);
      for (int n = 1; n <= 40; ++n) {
        const auto general = detail::build_ode_coeffs_any(*pot, c, n);
        const auto closed = build_ode_coeffs_doublewell(c, n);
        for (int l = 0; l < 2; ++l) diff = std::max(diff, abs(general.A[l] - closed.A[l]) / abs(general.A[l]));
        diff = std::max(diff, abs(general.B[0] - closed.B[0]) / abs(general.B[0]));
      }
      pass = pass && diff <= ExtendedReal(1e-18);
      text += "closed form vs general (n in [1,40]) rel diff = " + sci(diff) + " (tol 1e-18)";
    }
  }
  return {pass, text};
}

Outcome criterion6(const Fixture& f) {
  const auto c = chebyshev_betas(f.h_quad, 31);
  const Projector projector(f.hermite, c, f.rule, 30);
  bool pass = true;
  std::string detail = "error at N=30:";
  for (const char* id : {"cos", "exp", "expsq"}) {
    const ExtendedReal e = projector.errors(test_function(id).value).back().direct;
    pass = pass && e <= ExtendedReal(1e-9);
    detail += std::string(" ") + id + " " + sci(e);
  }
  return {pass, detail + " (tol 1e-9)"};
}

std::vector<double> fk_orders(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& c,
                              const QuadratureRule& rule, int degree) {
  const Projector projector(pot, c, rule, degree);
  FitWindow window;
  window.max_n = std::min(window.max_n, degree);
  std::vector<double> orders;
  for (int k = 1; k <= 4; ++k) {
    orders.push_back(convergence_order(projector.errors(test_function("f" + std::to_string(k)).value), window).order);
  }
  return orders;
}

Outcome criterion7(const Fixture& f) {
  const auto c = chebyshev_betas(f.h_quad, 61);
  const auto orders = fk_orders(f.hermite, c, f.rule, 60);
  bool pass = true;
  std::string detail = "fitted orders on N in [10,60]:";
  for (int k = 1; k <= 4; ++k) {
    const double o = orders[k - 1];
    const bool ok = o >= k / 2.0 - 0.3 && o <= k / 2.0 + 0.4;
    pass = pass && ok;
    detail += " f" + std::to_string(k) + " " + fixed(o) + (ok ? "" : "(outside [" + fixed(k / 2.0 - 0.3, 1) + "," +
                                                                         fixed(k / 2.0 + 0.4, 1) + "])");
    if (k > 1 && !(o > orders[k - 2])) pass = false;
  }
  return {pass, detail + "; strictly increasing " +
                    (std::is_sorted(orders.begin(), orders.end(), std::less_equal<>()) ? "yes" : "no")};
}

Outcome criterion8(const Fixture& f) {
  const auto c = chebyshev_betas(f.d_quad, 61);
  const int degree = std::min(60, c.valid_upto - 1);
  const auto orders = fk_orders(f.doublewell, c, f.rule, degree);
  bool increasing = true;
  std::string detail = "fitted orders on N in [10," + std::to_string(std::min(60, degree)) + "]:";
  for (int k = 1; k <= 4; ++k) {
    detail += " f" + std::to_string(k) + " " + fixed(orders[k - 1]);
    if (k > 1) increasing = increasing && orders[k - 1] > orders[k - 2];
  }
  return {increasing, detail + (increasing ? "; strictly increasing" : "; NOT increasing")};
}

Outcome criterion9(const Fixture& f) {
  double worst = 0.0;
  for (const auto* m : {&f.h_quad, &f.d_quad}) {
    const auto c = chebyshev_betas(*m, 7);
    const auto ref = oracle::gram_schmidt_betas(m->mu, 7);
    for (int k = 0; k < 7; ++k) worst = std::max(worst, oracle::rel_error(c.beta[k], ref[k]));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", worst);
  return {worst <= 1e-20, std::string("Chebyshev vs MPFR Gram-Schmidt, beta_0..beta_6, both presets: max rel err ") +
                              buf + " (tol 1e-20)"};
}

Outcome criterion10(const Fixture& f) {
  const ExtendedReal r = poincare_ratio(f.hermite, f.rule, test_function("x"));
  const bool exact = abs(r - ExtendedReal(4.0)) <= ExtendedReal(1e-12);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(1, 6);
  std::normal_distribution<double> coef(0.0, 1.0);
  bool all_positive = true;
  ExtendedReal lo(1e300), hi(0.0);
  for (const auto* pot : {&f.hermite, &f.doublewell}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<ExtendedReal> c(deg(rng) + 1);
      for (auto& v : c) v = ExtendedReal(coef(rng));
      if (c.back() == ExtendedReal(0.0)) c.back() = ExtendedReal(1.0);
      const ExtendedReal q = poincare_ratio(*pot, f.rule, polynomial_function(c));
      all_positive = all_positive && q.is_finite() && q > ExtendedReal(0.0);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  return {exact && all_positive, "f(x)=x Hermite ratio = " + to_string(r, 20) +
                                     " (4 +- 1e-12); 10 random polynomials per preset: ratios in [" + sci(lo) +
                                     ", " + sci(hi) + "] " + (all_positive ? "all finite and positive" : "NOT all positive")};
}

Outcome criterion11(const Fixture&) {
  const std::string g0 = gamma_sequence(0), g1 = gamma_sequence(1), g2 = gamma_sequence(2);
  return {g0 == "1" && g1 == "7" && g2 == "265", "gamma_0..2 = " + g0 + ", " + g1 + ", " + g2};
}

std::set<int> parse_expected(int argc, char** argv) {
  std::set<int> expected;
  const char* prefix = "--expect-fail=";
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], prefix, std::strlen(prefix)) != 0) continue;
    std::stringstream ss(argv[i] + std::strlen(prefix));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) expected.insert(std::stoi(item));
    }
  }
  return expected;
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<int> expected = parse_expected(argc, argv);
  const Fixture fixture;
  const std::vector<std::function<Outcome(const Fixture&)>> criteria{
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i](fixture);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("[%s] criterion %2d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
  }
  std::printf("summary: %zu/%zu pass", criteria.size() - failed.size(), criteria.size());
  if (!expected.empty()) {
    std::printf("; expected failures:");
    for (int id : expected) std::printf(" %d", id);
  }
  std::printf("\n");
  if (failed != expected) {
    std::printf("outcome differs from the expected set\n");
    return 1;
  }
  return 0;
}
