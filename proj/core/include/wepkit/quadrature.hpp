#pragma once

#include <functional>

namespace wep::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double abs_tol = 1e-10;
  //! Bisection depth allowed for any subinterval, and the number of dyadic
  //! levels used by integrate_from_zero.
  int max_levels = 60;
};

//! Integral of g over [a, b] by globally adaptive Gauss-Kronrod (7/15).
//! Throws DivergenceError if the tolerance cannot be met within the level
//! budget or the integrand returns non-finite values.
double integrate(const Integrand& g, double a, double b, Options opt = {});

//! Integral of g over (0, b] for g with a possible integrable singularity at
//! 0. (0, b] is cut into dyadic pieces (b 2^-(k+1), b 2^-k]; each piece is
//! integrated adaptively and the remaining tail is extrapolated once the
//! piece ratio has settled. Non-decaying pieces mean divergence.
double integrate_from_zero(const Integrand& g, double b, Options opt = {});

} // namespace wep::quad
