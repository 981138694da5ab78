#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/generators.hpp"
#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"
#include "wepkit/quadrature.hpp"

using namespace wep;

namespace {

// Composite Simpson on [a, b]; the oracle for smooth integrands.
template <class G>
double simpson(G g, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

} // namespace

TEST(Quadrature, SmoothIntegrals) {
  EXPECT_NEAR(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-12);
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0), std::numbers::e - 1.0, 1e-12);
}

TEST(Quadrature, IntegrableSingularityAtZero) {
  // x^{-1/2} and x^{-3/4} on (0, 1].
  EXPECT_NEAR(quad::integrate_from_zero([](double x) { return 1.0 / std::sqrt(x); }, 1.0), 2.0, 1e-8);
  EXPECT_NEAR(quad::integrate_from_zero([](double x) { return std::pow(x, -0.75); }, 1.0), 4.0, 1e-7);
}

TEST(Quadrature, DivergentIntegralThrows) {
  EXPECT_THROW(quad::integrate_from_zero([](double x) { return 1.0 / x; }, 1.0), DivergenceError);
  EXPECT_THROW(quad::integrate_from_zero([](double x) { return std::pow(x, -1.5); }, 1.0), DivergenceError);
}

TEST(Moments, PowerQuarterOnUniform) {
  const auto u = Distribution::uniform();
  const auto f = WeightFunction::power(0.25);
  const auto m = conditional_moments(u, f, Interval(0.0, 1.0));
  EXPECT_NEAR(m.mean, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(m.variance, 2.0 / 9.0, 1e-14);
  for (double t : {0.1, 0.5, 0.9})
    EXPECT_NEAR(compensator(u, f, t), 4.0 / 3.0 * std::pow(t, 0.75), 1e-14);
}

// Var(x^{-a} | X in (0, e]) = e^{-2a} a^2 / ((1 - 2a)(1 - a)^2) under uniform.
TEST(Moments, PowerVarianceNearZero) {
  const auto u = Distribution::uniform();
  for (double a : {0.1, 0.25, 0.4}) {
    for (double e : {1.0, 0.1, 1e-4}) {
      const double expect = std::pow(e, -2 * a) * a * a / ((1 - 2 * a) * (1 - a) * (1 - a));
      const auto m = conditional_moments(u, WeightFunction::power(a), Interval(0.0, e));
      EXPECT_NEAR(m.variance / expect, 1.0, 1e-10);
    }
  }
}

TEST(Moments, InfiniteVarianceDiverges) {
  const auto u = Distribution::uniform();
  EXPECT_THROW(conditional_moments(u, WeightFunction::power(0.75), Interval(0.0, 0.5)), DivergenceError);
  EXPECT_THROW(conditional_moments(u, WeightFunction::power(0.75), Interval(0.0, 0.5), MomentMethod::quadrature),
               DivergenceError);
  // Away from 0 it is finite.
  EXPECT_NO_THROW(conditional_moments(u, WeightFunction::power(0.75), Interval(0.1, 0.5)));
}

TEST(Moments, ZeroMassConvention) {
  const Distribution d({ContinuousPart::uniform(0.5, 1.0)}, {});
  const auto m = conditional_moments(d, WeightFunction::cosine(), Interval(0.1, 0.4));
  EXPECT_EQ(m.mean, 0.0);
  EXPECT_EQ(m.variance, 0.0);
}

TEST(Moments, AtomAtZeroEntersCompensator) {
  const Distribution d({ContinuousPart::uniform(0.0, 1.0, 0.8)}, {{0.0, 0.2}});
  const auto f = WeightFunction::polynomial({2.0, 1.0});
  EXPECT_NEAR(compensator(d, f, 0.0), 0.4, 1e-15);
  EXPECT_NEAR(compensator(d, f, 1.0), 0.4 + 0.8 * 2.5, 1e-14);
  EXPECT_THROW(compensator(d, WeightFunction::power(0.2), 0.5), DivergenceError);
}

// Closed forms, adaptive quadrature and a Simpson oracle agree on bounded
// weights against smooth parts.
TEST(MomentsProperty, ClosedFormMatchesQuadratureAndSimpson) {
  Engine eng(404);
  for (int c = 0; c < 150; ++c) {
    wep::testing::DistOptions opt;
    opt.allow_atoms = false;
    const auto d = wep::testing::random_distribution(eng, opt);
    const auto f = wep::testing::random_weight(eng);
    double a = wep::testing::unif(eng, 0.0, 1.0), b = wep::testing::unif(eng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    const Interval iv(a, b);
    if (d.mass(iv) < 1e-6) continue;
    const auto q = raw_moments(d, f, iv, 2, MomentMethod::quadrature);
    if (has_closed_form(d, f)) {
      const auto cf = raw_moments(d, f, iv, 2, MomentMethod::closed_form);
      EXPECT_NEAR(cf.sum_f, q.sum_f, 1e-9) << f.name();
      EXPECT_NEAR(cf.sum_f2, q.sum_f2, 1e-9) << f.name();
    }
    // Simpson only for a smooth integrand: no table, no singular power part.
    bool smooth = f.family() != WeightFunction::Family::table;
    for (const auto& p : d.parts())
      if (p.family == PartFamily::power && p.beta < 2.0 && p.beta != 0.0 && p.beta != 1.0) smooth = false;
    if (!smooth) continue;
    double s = 0.0;
    for (const auto& p : d.parts()) {
      const double lo = std::max(a, p.lo), hi = std::min(b, p.hi);
      if (hi > lo) s += p.weight * simpson([&](double x) { return f(x) * p.density(x); }, lo, hi);
    }
    EXPECT_NEAR(q.sum_f, s, 1e-8);
  }
}

TEST(MomentsProperty, ConditionalVarianceIsNonNegative) {
  Engine eng(505);
  for (int c = 0; c < 200; ++c) {
    const auto d = wep::testing::random_distribution(eng);
    const auto f = wep::testing::random_weight(eng);
    double a = wep::testing::unif(eng, 0.0, 1.0), b = wep::testing::unif(eng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    const auto m = conditional_moments(d, f, Interval(a, b));
    EXPECT_GE(m.variance, 0.0);
    EXPECT_LE(std::abs(m.mean), f.sup_abs() + 1e-12);
  }
}
