#include "wepkit/poisson.hpp"

#include <cmath>

#include "wepkit/error.hpp"

namespace wep {

namespace {

constexpr double kRelStop = 1e-15;

void check_rate(double b, const char* where) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError(where, "rate b must be > 0");
}

// Sum of exp(log_pmf(k)) for k = k0, k0 + step, ... while terms matter.
double tail_sum(double b, std::int64_t k0, int step) {
  if (k0 < 0) return 0.0;
  const double lead = poisson_log_pmf(b, static_cast<std::uint64_t>(k0));
  double sum = 1.0; // relative to exp(lead)
  for (std::int64_t k = k0 + step; k >= 0; k += step) {
    const double term = std::exp(poisson_log_pmf(b, static_cast<std::uint64_t>(k)) - lead);
    sum += term;
    if (term < kRelStop * sum) break;
  }
  return std::exp(lead) * sum;
}

} // namespace

double poisson_log_pmf(double b, std::uint64_t k) {
  check_rate(b, "verify::poisson_log_pmf");
  const double kd = static_cast<double>(k);
  return -b + kd * std::log(b) - std::lgamma(kd + 1.0);
}

double poisson_upper_tail(double b, double x) {
  check_rate(b, "verify::poisson_upper_tail");
  if (x <= 0.0) return 1.0;
  const auto k0 = static_cast<std::int64_t>(std::ceil(x));
  if (static_cast<double>(k0) < b) return 1.0 - poisson_lower_tail(b, static_cast<double>(k0 - 1));
  return tail_sum(b, k0, 1);
}

double poisson_lower_tail(double b, double x) {
  check_rate(b, "verify::poisson_lower_tail");
  if (x < 0.0) return 0.0;
  const auto k0 = static_cast<std::int64_t>(std::floor(x));
  if (static_cast<double>(k0) > b) return 1.0 - poisson_upper_tail(b, static_cast<double>(k0 + 1));
  return tail_sum(b, k0, -1);
}

double chernoff_upper(double b, double x) {
  constexpr auto where = "verify::chernoff_upper";
  check_rate(b, where);
  if (!(x >= b)) throw DomainError(where, "need x >= b (use chernoff_lower)");
  if (x == b) return 1.0;
  return std::exp(x - b - x * std::log(x / b));
}

double chernoff_lower(double b, double x) {
  constexpr auto where = "verify::chernoff_lower";
  check_rate(b, where);
  if (!(x >= 0.0 && x <= b)) throw DomainError(where, "need 0 <= x <= b (use chernoff_upper)");
  if (x == 0.0) return std::exp(-b);
  if (x == b) return 1.0;
  return std::exp(x - b - x * std::log(x / b));
}

double gamma_estimate(std::uint64_t n, double upper_mass) {
  constexpr auto where = "verify::gamma_estimate";
  if (n == 0) throw DomainError(where, "n must be >= 1");
  if (!(upper_mass > 0.0 && upper_mass <= 1.0)) throw DomainError(where, "upper mass must lie in (0, 1]");
  const double rate = static_cast<double>(n) * upper_mass;
  // The Poisson pmf peaks at floor(rate).
  const auto mode = static_cast<std::uint64_t>(std::floor(rate));
  return std::exp(poisson_log_pmf(rate, mode) - poisson_log_pmf(static_cast<double>(n), n));
}

double gamma_estimate(const Distribution& d, std::uint64_t n) {
  return gamma_estimate(n, 1.0 - d.cdf_left(d.median()));
}

} // namespace wep
