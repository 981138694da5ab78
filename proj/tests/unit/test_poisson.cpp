#include <gtest/gtest.h>

#include <cmath>

#include "wepkit/error.hpp"
#include "wepkit/poisson.hpp"

using namespace wep;

namespace {

// Direct pmf recursion p_k = p_{k-1} b / k, summed to far past the mode.
double exact_upper(double b, int x) {
  double p = std::exp(-b), below = 0.0, total = 0.0;
  for (int k = 0; k < 2000; ++k) {
    if (k > 0) p *= b / k;
    if (k < x) below += p;
    total += p;
  }
  return total - below;
}

double exact_lower(double b, int x) {
  double p = std::exp(-b), s = 0.0;
  for (int k = 0; k <= x; ++k) {
    if (k > 0) p *= b / k;
    s += p;
  }
  return s;
}

} // namespace

TEST(Poisson, TailsMatchRecursion) {
  for (double b : {1.0, 10.0, 100.0})
    for (int x = 0; x <= 3 * static_cast<int>(b) + 5; x += 1) {
      EXPECT_NEAR(poisson_upper_tail(b, x), exact_upper(b, x), 1e-12) << b << " " << x;
      EXPECT_NEAR(poisson_lower_tail(b, x), exact_lower(b, x), 1e-12) << b << " " << x;
    }
}

TEST(Poisson, ChernoffExamples) {
  EXPECT_EQ(chernoff_upper(5.0, 5.0), 1.0);
  EXPECT_EQ(chernoff_lower(5.0, 5.0), 1.0);
  EXPECT_NEAR(chernoff_upper(100.0, 120.0), std::exp(20.0 - 120.0 * std::log(1.2)), 1e-15);
  EXPECT_NEAR(chernoff_upper(100.0, 120.0), 0.1527, 2e-4);
  EXPECT_LT(poisson_upper_tail(100.0, 120.0), chernoff_upper(100.0, 120.0));
  EXPECT_NEAR(chernoff_lower(7.0, 0.0), std::exp(-7.0), 1e-18);
  EXPECT_NEAR(chernoff_lower(7.0, 0.0), poisson_lower_tail(7.0, 0.0), 1e-15);
  EXPECT_GE(chernoff_lower(100.0, 80.0), exact_lower(100.0, 80));
  EXPECT_THROW(chernoff_upper(10.0, 9.0), DomainError);
  EXPECT_THROW(chernoff_lower(10.0, 11.0), DomainError);
  EXPECT_THROW(chernoff_upper(0.0, 1.0), DomainError);
}

TEST(Poisson, ChernoffDominatesTails) {
  for (double b : {1.0, 10.0, 100.0}) {
    const int span = static_cast<int>(std::ceil(10.0 * std::sqrt(b)));
    for (int k = 0; k <= span; ++k) {
      const double up = b + k;
      EXPECT_GE(chernoff_upper(b, up), exact_upper(b, static_cast<int>(std::ceil(up))));
      const double lo = b - k;
      if (lo >= 0.0) EXPECT_GE(chernoff_lower(b, lo), exact_lower(b, static_cast<int>(std::floor(lo))));
    }
  }
}

TEST(Poisson, GammaEstimate) {
  EXPECT_NEAR(gamma_estimate(1), std::exp(0.5), 1e-12);
  const double g = gamma_estimate(10000);
  EXPECT_GE(g, 1.40);
  EXPECT_LE(g, 1.43);
  // Past small n the estimates approach sqrt(2) from below.
  const double r2 = std::sqrt(2.0);
  EXPECT_GT(std::abs(gamma_estimate(100) - r2), std::abs(gamma_estimate(1000) - r2));
  EXPECT_GT(std::abs(gamma_estimate(1000) - r2), std::abs(gamma_estimate(10000) - r2));
  EXPECT_LT(std::abs(gamma_estimate(10000) - r2), 1e-4);
  EXPECT_THROW(gamma_estimate(0), DomainError);
}

// Oracle: mode pmf of Poisson(n / 2) and pmf of Poisson(n) at n by recursion
// in log space.
TEST(Poisson, GammaMatchesRecursion) {
  for (int n : {1, 2, 3, 7, 50, 333}) {
    const double rate = n / 2.0;
    double log_mode = -rate, log_top = -static_cast<double>(n), lp = -rate, best = lp;
    for (int k = 1; k <= n; ++k) {
      lp += std::log(rate / k);
      best = std::max(best, lp);
      log_top += std::log(static_cast<double>(n) / k);
    }
    log_mode = best;
    EXPECT_NEAR(gamma_estimate(static_cast<std::uint64_t>(n)), std::exp(log_mode - log_top), 1e-11) << n;
  }
}

TEST(Poisson, GammaFromDistribution) {
  EXPECT_NEAR(gamma_estimate(Distribution::uniform(), 50), gamma_estimate(50, 0.5), 1e-15);
  // Atom at the median: mu([m, 1]) = 0.75.
  const Distribution d({ContinuousPart::uniform(0.0, 1.0, 0.5)}, {{0.5, 0.5}});
  EXPECT_NEAR(gamma_estimate(d, 50), gamma_estimate(50, 0.75), 1e-15);
}
