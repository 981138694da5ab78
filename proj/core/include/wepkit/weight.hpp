#pragma once

#include <string>
#include <vector>

#include "wepkit/distribution.hpp"

namespace wep {

//! The measurable weight f : [0, 1] -> R. Immutable value type.
class WeightFunction {
public:
  enum class Family { constant, power, polynomial, cosine, sine, table };

  //! f(x) = c
  static WeightFunction constant(double c);
  //! f(x) = x^(-alpha); undefined at 0 when alpha > 0.
  static WeightFunction power(double alpha);
  //! f(x) = c[0] + c[1] x + c[2] x^2 + ...
  static WeightFunction polynomial(std::vector<double> coefficients);
  //! f(x) = cos(2 pi x)
  static WeightFunction cosine();
  //! f(x) = sin(2 pi x)
  static WeightFunction sine();
  //! Left-continuous step function: values[i] on (knots[i], knots[i+1]],
  //! values[0] also at x = knots[0]. Knots must run from 0 to 1.
  static WeightFunction table(std::vector<double> knots, std::vector<double> values);

  Family family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(double x) const;
  double eval(double x) const { return (*this)(x); }

  bool defined_at_zero() const noexcept;
  //! f >= 0 everywhere on (0, 1].
  bool nonnegative() const;
  //! sup |f| on (0, 1]; +inf for power weights with alpha > 0.
  double sup_abs() const;
  //! Points in (0, 1) where f changes sign (critical points of the compensator).
  std::vector<double> sign_change_points() const;
  //! E f(X)^2 < inf under d, decided from the families' exponents.
  bool square_integrable_under(const Distribution& d) const;

  std::string name() const;

private:
  explicit WeightFunction(Family f) : family_(f) {}

  Family family_;
  double alpha_ = 0.0;
  std::vector<double> coeffs_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

} // namespace wep
