#include "potential.hpp"

#include "error.hpp"

namespace expoly {

EvenPolynomialPotential::EvenPolynomialPotential(std::vector<ExtendedReal> coefficients)
    : v_(std::move(coefficients)), name_("custom") {
  if (v_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "potential must be nonconstant (need v0,...,vm with m >= 1)");
  }
  for (const auto& c : v_) {
    if (!c.is_finite()) throw Error(ErrorCode::InvalidArgument, "potential coefficients must be finite");
  }
  if (!(v_.back() > ExtendedReal(0.0))) {
    throw Error(ErrorCode::InvalidArgument, "leading coefficient v_m must be positive");
  }
}

EvenPolynomialPotential EvenPolynomialPotential::hermite() {
  EvenPolynomialPotential pot({log(dd::kTwoPi) * ExtendedReal(0.5), ExtendedReal(0.5)});
  pot.name_ = "hermite";
  return pot;
}

EvenPolynomialPotential EvenPolynomialPotential::double_well() {
  EvenPolynomialPotential pot({ExtendedReal(1.0), ExtendedReal(-2.0), ExtendedReal(1.0)});
  pot.name_ = "doublewell";
  return pot;
}

EvenPolynomialPotential EvenPolynomialPotential::parse(std::string_view text) {
  if (text == "hermite") return hermite();
  if (text == "doublewell" || text == "double-well") return double_well();
  std::vector<ExtendedReal> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    v.push_back(parse_extended(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return EvenPolynomialPotential(std::move(v));
}

ExtendedReal EvenPolynomialPotential::phi(const ExtendedReal& x) const {
  const ExtendedReal t = square(x);
  ExtendedReal acc = v_.back();
  for (auto it = v_.rbegin() + 1; it != v_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ExtendedReal EvenPolynomialPotential::phi_prime(const ExtendedReal& x) const {
  // phi'(x) = x * sum_{p>=1} 2p v_p t^{p-1}, t = x^2
  const ExtendedReal t = square(x);
  const int m = half_degree();
  ExtendedReal acc = v_[m] * ExtendedReal(2 * m);
  for (int p = m - 1; p >= 1; --p) acc = acc * t + v_[p] * ExtendedReal(2 * p);
  return acc * x;
}

ExtendedReal EvenPolynomialPotential::weight(const ExtendedReal& x) const {
  const ExtendedReal p = phi(x);
  if (p.hi() > 750.0) return ExtendedReal(0.0);
  return exp(-p);
}

std::string EvenPolynomialPotential::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) out.push_back(',');
    out += to_string(v_[i]);
  }
  return out;
}

}  // namespace expoly
