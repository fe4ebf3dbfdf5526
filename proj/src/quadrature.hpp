#pragma once

#include <span>
#include <string>
#include <vector>

#include "extended_real.hpp"

namespace expoly {

enum class QuadratureKind {
  /// 3h/10 (1, 5, 1, 6, 1, 5, 1) per panel.
  Weddle,
  /// Closed 7-point Newton-Cotes, h/140 (41, 216, 27, 272, 27, 216, 41).
  NewtonCotes7,
};

std::string to_string(QuadratureKind kind);
/// "weddle" or "newton-cotes"; throws Error(InvalidArgument) otherwise.
QuadratureKind parse_quadrature_kind(const std::string& text);

/// Composite 7-point rule on [-L, L] with P panels sharing endpoints, so
/// there are 6P + 1 equispaced nodes.
class QuadratureRule {
 public:
  QuadratureRule(ExtendedReal halfwidth, int panels, QuadratureKind kind = QuadratureKind::Weddle);

  /// L = 30, P = 350, Weddle weights.
  static QuadratureRule standard() { return QuadratureRule(ExtendedReal(30.0), 350); }

  const ExtendedReal& halfwidth() const { return halfwidth_; }
  int panels() const { return panels_; }
  QuadratureKind kind() const { return kind_; }
  const ExtendedReal& step() const { return step_; }

  std::span<const ExtendedReal> nodes() const { return nodes_; }
  std::span<const ExtendedReal> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  /// Index of the node x = 0.  It sits on a panel boundary when P is even.
  long zero_index() const { return 3L * panels_; }

  /// sum_j w_j * values[j]; `values` must have one entry per node.
  ExtendedReal sum(std::span<const ExtendedReal> values) const;

  template <class F>
  ExtendedReal integrate(F&& f) const {
    ExtendedReal acc(0.0);
    for (std::size_t j = 0; j < nodes_.size(); ++j) acc += weights_[j] * f(nodes_[j]);
    return acc;
  }

 private:
  ExtendedReal halfwidth_;
  int panels_;
  QuadratureKind kind_;
  ExtendedReal step_;
  std::vector<ExtendedReal> nodes_;
  std::vector<ExtendedReal> weights_;
};

}  // namespace expoly
