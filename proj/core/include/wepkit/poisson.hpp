#pragma once

#include <cstdint>

#include "wepkit/distribution.hpp"

namespace wep {

//! log P(N = k) for N ~ Poisson(b).
double poisson_log_pmf(double b, std::uint64_t k);

//! P(N >= x) and P(N <= x), summed in log space until the next term drops
//! below 1e-15 of the running total.
double poisson_upper_tail(double b, double x);
double poisson_lower_tail(double b, double x);

//! exp(x - b - x ln(x / b)), the optimised exponential-moment bound on
//! P(N >= x). Requires b > 0 and x >= b.
double chernoff_upper(double b, double x);

//! Same bound on P(N <= x); requires b > 0 and 0 <= x <= b. Equals e^-b at 0.
double chernoff_lower(double b, double x);

//! max_k P(Poisson(n * upper_mass) = k) / P(Poisson(n) = n).
double gamma_estimate(std::uint64_t n, double upper_mass = 0.5);

//! As above with upper_mass = mu([m, 1]), m the median of d.
double gamma_estimate(const Distribution& d, std::uint64_t n);

} // namespace wep
