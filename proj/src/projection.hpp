#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chebyshev.hpp"
#include "extended_real.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"
#include "quadrature.hpp"

namespace expoly {

using RealFunction = std::function<ExtendedReal(const ExtendedReal&)>;

struct TestFunction {
  std::string id;
  RealFunction value;
  /// May be empty when the derivative is not needed.
  RealFunction derivative;
  /// k for the piecewise family x^k 1_{x>=0}; nullopt for smooth functions.
  std::optional<int> regularity;
};

/// exp(x), exp(0.1 x^2), cos(x) and f_k(x) = x^k for x >= 0, 0 otherwise,
/// k = 1..4, with ids "exp", "expsq", "cos", "f1".."f4".
std::vector<TestFunction> standard_roster();

/// Looks up a roster id, or "x" / "poly:c0,c1,...".  Throws
/// Error(InvalidArgument) for unknown ids.
TestFunction test_function(const std::string& id);

/// A polynomial sum_i c_i x^i with its derivative.
TestFunction polynomial_function(std::vector<ExtendedReal> coefficients, std::string id = "poly");

struct ProjectionError {
  int N = 0;
  /// sqrt of the quadrature of (f - pi_N f)^2 rho.
  ExtendedReal direct{0.0};
  /// ||f||^2 - sum_{k<=N} c_k^2.
  ExtendedReal parseval_squared{0.0};
};

/// Shared quadrature data for projecting one function onto p_0..p_N for
/// every N up to `max_degree`.
class Projector {
 public:
  Projector(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
            const QuadratureRule& rule, int max_degree);

  int max_degree() const { return basis_.degree(); }

  /// c_k = \int f p_k rho for k = 0..max_degree().
  std::vector<ExtendedReal> coefficients(const RealFunction& f) const;

  /// Errors for N = 0..max_degree().
  std::vector<ProjectionError> errors(const RealFunction& f) const;

  /// sqrt(\int (f - q)^2 rho) for an arbitrary function q.
  ExtendedReal distance(const RealFunction& f, const RealFunction& q) const;

 private:
  std::vector<ExtendedReal> sample(const RealFunction& f) const;

  BasisEvaluation basis_;
  std::vector<ExtendedReal> wrho_;
};

/// c_0..c_N.
std::vector<ExtendedReal> project(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                                  const QuadratureRule& rule, const RealFunction& f, int N);

/// Both error routes at a single N.  Throws Error(Breakdown) when the
/// Parseval value is below -tolerance * ||f||^2.
ProjectionError projection_error(const EvenPolynomialPotential& pot, const RecurrenceCoefficients& coeffs,
                                 const QuadratureRule& rule, const RealFunction& f, int N,
                                 double tolerance = 1e-12);

struct OrderFit {
  /// error^2 ~ N^{-order_squared}.
  double order_squared = 0.0;
  /// error ~ N^{-order}; half of order_squared.
  double order = 0.0;
  int points_used = 0;
  /// Decay faster than any fixed power over the window.
  bool spectral = false;
};

struct FitWindow {
  int min_n = 10;
  int max_n = 60;
  double noise_floor = 1e-24;
};

/// Least-squares slope of log(error^2) against log N over the points whose
/// N lies in the window and whose error exceeds the noise floor.  Throws
/// Error(InsufficientData) with fewer than four such points.
OrderFit convergence_order(const std::vector<ProjectionError>& points, const FitWindow& window = {});

struct ProjectionReport {
  std::string function_id;
  std::vector<ProjectionError> points;
  std::optional<OrderFit> fit;
  /// Reference error order for f_k: k/2 (Gaussian weight); NaN when none.
  double theoretical_order = 0.0;
};

/// `function,N,error,order_running` rows for every report.
void write_convergence_csv(std::ostream& out, const std::vector<ProjectionReport>& reports,
                           const FitWindow& window = {});

/// `function,order_error_sq,order_error,spectral,points,theoretical_order`.
void write_order_summary_csv(std::ostream& out, const std::vector<ProjectionReport>& reports);

/// \int (1 + phi'^2)(f - <f>)^2 rho / \int f'^2 rho with <f> the rho-mean.
/// Throws Error(Domain) when the denominator vanishes.
ExtendedReal poincare_ratio(const EvenPolynomialPotential& pot, const QuadratureRule& rule,
                            const TestFunction& f);

/// gamma_0 = 1, gamma_{k+1} = 2^{gamma_k + 1} + gamma_k + 2, as an exact
/// decimal string.  gamma_4 has more digits than atoms in the universe, so
/// k > 3 throws Error(Range).
std::string gamma_sequence(int k);

}  // namespace expoly
