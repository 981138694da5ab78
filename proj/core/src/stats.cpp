#include "wepkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wepkit/error.hpp"

namespace wep {

void NeumaierSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.0) {
    // Theta-function form, fast for small x.
    const double c = std::sqrt(2.0 * std::numbers::pi) / x;
    const double q = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * x * x));
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double term = std::pow(q, (2 * k - 1) * (2 * k - 1));
      s += term;
      if (term < 1e-17 * s) break;
    }
    return c * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return 1.0 - 2.0 * s;
}

double kolmogorov_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("verify::kolmogorov_quantile", "p must lie in (0, 1)");
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_scale(std::size_t n) {
  const double r = std::sqrt(static_cast<double>(n));
  return r + 0.12 + 0.11 / r;
}

Moments4 sample_moments(const std::vector<double>& xs) {
  Moments4 m;
  if (xs.empty()) return m;
  const double n = static_cast<double>(xs.size());
  NeumaierSum s1;
  for (double x : xs) s1.add(x);
  m.mean = s1.value() / n;
  NeumaierSum s2, s3, s4;
  for (double x : xs) {
    const double d = x - m.mean;
    s2.add(d * d);
    s3.add(d * d * d);
    s4.add(d * d * d * d);
  }
  m.variance = s2.value() / n;
  if (m.variance > 0.0) {
    m.skewness = s3.value() / n / std::pow(m.variance, 1.5);
    m.excess_kurtosis = s4.value() / n / (m.variance * m.variance) - 3.0;
  }
  return m;
}

double skewness_se(std::size_t n) {
  const double k = static_cast<double>(n);
  return std::sqrt(6.0 * (k - 2.0) / ((k + 1.0) * (k + 3.0)));
}

double kurtosis_se(std::size_t n) {
  const double k = static_cast<double>(n);
  return std::sqrt(24.0 * k * (k - 2.0) * (k - 3.0) /
                   ((k + 1.0) * (k + 1.0) * (k + 3.0) * (k + 5.0)));
}

double kurtosis_mean(std::size_t n) { return -6.0 / (static_cast<double>(n) + 1.0); }

} // namespace wep
