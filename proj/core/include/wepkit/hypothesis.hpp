#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/interval.hpp"
#include "wepkit/weight.hpp"

namespace wep {

//! Candidate h for the interval-wise conditional variance bound
//! Var(f(X) | X in I) <= h(mu(I)) / mu(I).
class BoundFunction {
public:
  enum class Family { linear, power, table };

  //! h(x) = coef * x (coef = gamma^2 for |f| <= gamma).
  static BoundFunction linear(double coef);
  //! h(x) = coef * x^exponent, exponent in (0, 1].
  static BoundFunction power(double coef, double exponent);
  //! Piecewise-linear interpolation through (knots[i], values[i]); knots run
  //! from 0 to 1 and values must be non-decreasing.
  static BoundFunction table(std::vector<double> knots, std::vector<double> values);

  double operator()(double x) const;
  Family family() const noexcept { return family_; }
  double coef() const noexcept { return coef_; }
  double exponent() const noexcept { return exponent_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }
  //! Same shape, different multiplicative constant (linear / power only).
  BoundFunction with_coef(double c) const;
  std::string name() const;

private:
  explicit BoundFunction(Family f) : family_(f) {}
  void check_increasing() const;

  Family family_;
  double coef_ = 1.0;
  double exponent_ = 1.0;
  std::vector<double> knots_;
  std::vector<double> values_;
};

struct LimitZeroCheck {
  bool pass = false;
  std::vector<double> xs;
  std::vector<double> values; //!< h(x) ln(x)
};

struct RatioBoundedCheck {
  bool pass = false;
  double sup = 0.0;
  std::vector<double> xs;
  std::vector<double> values; //!< x / h(x)
};

//! h(x) ln x at x = 10^-1 .. 10^-12; passes when |values| end below 1e-3
//! and shrink strictly over the last six points.
LimitZeroCheck limit_zero_check(const BoundFunction& h);

//! x / h(x) at x = 2^0 .. 2^-40; passes when the maximum is <= 1e6 and the
//! tail is non-increasing.
RatioBoundedCheck ratio_bounded_check(const BoundFunction& h);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct HypothesisReport {
  int depth = 0;
  std::size_t intervals_scanned = 0;
  Interval worst_interval;
  double worst_ratio = 0.0;
  //! Worst finite ratio using intervals of level <= j, j = 0..depth.
  std::vector<double> depth_profile;
  bool divergent = false;
  std::optional<Interval> divergent_interval;
  LimitZeroCheck limit_zero;
  RatioBoundedCheck ratio_bounded;
  //! False when some interval has an infinite conditional variance or the
  //! worst ratio keeps growing with depth.
  bool certifiable = true;
  Verdict verdict = Verdict::inconclusive;
};

inline constexpr double kHypothesisTolerance = 1e-6;
inline constexpr double kGrowthFactor = 1.3;
inline constexpr int kMaxScanDepth = 24;

//! Scans dyadic intervals (k 2^-j, (k+l) 2^-j], j <= depth, l in {1, 2, 3},
//! plus intervals anchored at each atom, for the worst ratio
//! Var(f | I) mu(I) / h(mu(I)).
HypothesisReport scan_bound(const Distribution& d, const WeightFunction& f,
                            const BoundFunction& h, int depth, unsigned workers = 1);

struct FitResult {
  bool certifiable = false;
  std::optional<BoundFunction> bound;
  double constant = 0.0;
  std::string reason;
  std::vector<double> depth_profile;
};

//! Smallest constant C (to relative 1e-3) such that C * shape passes the
//! scan, or not-certifiable when ratios diverge with depth.
FitResult fit_constant(const Distribution& d, const WeightFunction& f, const BoundFunction& shape,
                       int depth, unsigned workers = 1);

} // namespace wep
