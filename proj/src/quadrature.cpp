#include "quadrature.hpp"

#include <array>

#include "error.hpp"

namespace expoly {

std::string to_string(QuadratureKind kind) {
  return kind == QuadratureKind::Weddle ? "weddle" : "newton-cotes";
}

QuadratureKind parse_quadrature_kind(const std::string& text) {
  if (text == "weddle") return QuadratureKind::Weddle;
  if (text == "newton-cotes" || text == "nc7") return QuadratureKind::NewtonCotes7;
  throw Error(ErrorCode::InvalidArgument, "unknown quadrature rule '" + text + "'");
}

QuadratureRule::QuadratureRule(ExtendedReal halfwidth, int panels, QuadratureKind kind)
    : halfwidth_(halfwidth), panels_(panels), kind_(kind) {
  if (!(halfwidth > ExtendedReal(0.0)) || !halfwidth.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "quadrature halfwidth must be positive");
  }
  if (panels < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one panel");

  const long count = 6L * panels + 1;
  step_ = ExtendedReal(2.0) * halfwidth / ExtendedReal(6.0 * panels);

  std::array<ExtendedReal, 7> panel;
  if (kind == QuadratureKind::Weddle) {
    const std::array<int, 7> w{1, 5, 1, 6, 1, 5, 1};
    const ExtendedReal scale = ExtendedReal(3.0) * step_ / ExtendedReal(10.0);
    for (int i = 0; i < 7; ++i) panel[i] = scale * ExtendedReal(w[i]);
  } else {
    const std::array<int, 7> w{41, 216, 27, 272, 27, 216, 41};
    const ExtendedReal scale = step_ / ExtendedReal(140.0);
    for (int i = 0; i < 7; ++i) panel[i] = scale * ExtendedReal(w[i]);
  }

  nodes_.resize(count);
  weights_.assign(count, ExtendedReal(0.0));
  for (long j = 0; j < count; ++j) {
    // Symmetric construction keeps x_j = -x_{count-1-j} bit-exact.
    const long offset = j - 3L * panels;
    nodes_[j] = step_ * ExtendedReal(static_cast<double>(offset));
  }
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < 7; ++i) weights_[6L * p + i] += panel[i];
  }
}

ExtendedReal QuadratureRule::sum(std::span<const ExtendedReal> values) const {
  if (values.size() != nodes_.size()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match quadrature node count");
  }
  ExtendedReal acc(0.0);
  for (std::size_t j = 0; j < values.size(); ++j) acc += weights_[j] * values[j];
  return acc;
}

}  // namespace expoly
