#include "wepkit/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"
#include "wepkit/parallel.hpp"

namespace wep {

BoundFunction BoundFunction::linear(double coef) {
  if (!(coef > 0.0) || !std::isfinite(coef))
    throw DomainError("hypothesis::BoundFunction", "linear coef must be finite and > 0");
  BoundFunction h(Family::linear);
  h.coef_ = coef;
  h.exponent_ = 1.0;
  return h;
}

BoundFunction BoundFunction::power(double coef, double exponent) {
  if (!(coef > 0.0) || !std::isfinite(coef))
    throw DomainError("hypothesis::BoundFunction", "power coef must be finite and > 0");
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw DomainError("hypothesis::BoundFunction", "power exponent must lie in (0, 1]");
  BoundFunction h(Family::power);
  h.coef_ = coef;
  h.exponent_ = exponent;
  return h;
}

BoundFunction BoundFunction::table(std::vector<double> knots, std::vector<double> values) {
  constexpr auto where = "hypothesis::BoundFunction";
  if (knots.size() < 2 || knots.size() != values.size())
    throw DomainError(where, "table needs matching knots/values, at least 2");
  if (knots.front() != 0.0 || knots.back() != 1.0)
    throw DomainError(where, "table knots must start at 0 and end at 1");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw DomainError(where, "table knots must be strictly increasing");
  BoundFunction h(Family::table);
  h.knots_ = std::move(knots);
  h.values_ = std::move(values);
  h.check_increasing();
  return h;
}

void BoundFunction::check_increasing() const {
  constexpr int grid = 10000;
  double prev = (*this)(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = (*this)(static_cast<double>(i) / grid);
    if (!(v >= prev))
      throw DomainError("hypothesis::BoundFunction", "h must be non-decreasing on [0, 1]");
    prev = v;
  }
  if (!(prev > 0.0)) throw DomainError("hypothesis::BoundFunction", "h(1) must be > 0");
}

double BoundFunction::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  switch (family_) {
  case Family::linear:
    return coef_ * x;
  case Family::power:
    return coef_ * std::pow(x, exponent_);
  case Family::table: {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.end()) return values_.back();
    const auto i = static_cast<std::size_t>(it - knots_.begin());
    const double t = (x - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
    return values_[i - 1] + t * (values_[i] - values_[i - 1]);
  }
  }
  return 0.0;
}

BoundFunction BoundFunction::with_coef(double c) const {
  switch (family_) {
  case Family::linear:
    return linear(c);
  case Family::power:
    return power(c, exponent_);
  case Family::table:
    break;
  }
  throw DomainError("hypothesis::fit_constant", "shape needs one free multiplicative constant");
}

std::string BoundFunction::name() const {
  std::ostringstream os;
  switch (family_) {
  case Family::linear:
    os << coef_ << "*x";
    break;
  case Family::power:
    os << coef_ << "*x^" << exponent_;
    break;
  case Family::table:
    os << "table(" << knots_.size() << ")";
    break;
  }
  return os.str();
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

LimitZeroCheck limit_zero_check(const BoundFunction& h) {
  LimitZeroCheck out;
  for (int k = 1; k <= 12; ++k) {
    const double x = std::pow(10.0, -k);
    out.xs.push_back(x);
    out.values.push_back(h(x) * std::log(x));
  }
  bool shrinking = true;
  for (std::size_t i = out.values.size() - 6; i < out.values.size(); ++i)
    shrinking = shrinking && std::abs(out.values[i]) < std::abs(out.values[i - 1]);
  out.pass = shrinking && std::abs(out.values.back()) < 1e-3;
  return out;
}

RatioBoundedCheck ratio_bounded_check(const BoundFunction& h) {
  RatioBoundedCheck out;
  bool positive = true;
  for (int k = 0; k <= 40; ++k) {
    const double x = std::ldexp(1.0, -k);
    const double hx = h(x);
    if (!(hx > 0.0)) positive = false;
    const double v = hx > 0.0 ? x / hx : HUGE_VAL;
    out.xs.push_back(x);
    out.values.push_back(v);
    out.sup = std::max(out.sup, v);
  }
  bool tail_ok = true;
  for (std::size_t i = out.values.size() - 10; i < out.values.size(); ++i)
    tail_ok = tail_ok && out.values[i] <= out.values[i - 1] * (1.0 + 1e-12);
  out.pass = positive && tail_ok && out.sup <= 1e6;
  return out;
}

namespace {

struct LevelBest {
  double ratio = -1.0;
  std::size_t index = std::numeric_limits<std::size_t>::max();
  std::size_t divergent = std::numeric_limits<std::size_t>::max();
};

// Intervals of scan level j: index i < 3 * 2^j is dyadic (k = i / 3,
// l = i % 3 + 1), the rest are anchored at atoms.
class LevelIntervals {
public:
  LevelIntervals(const Distribution& d, int level)
      : atoms_(d.atoms()), width_(std::ldexp(1.0, -level)),
        dyadic_(3 * (std::size_t{1} << level)) {}

  std::size_t size() const { return dyadic_ + atoms_.size() * 9; }

  // nullopt for index combinations that fall outside [0, 1].
  std::optional<Interval> at(std::size_t i) const {
    if (i < dyadic_) {
      const double k = static_cast<double>(i / 3);
      const double l = static_cast<double>(i % 3 + 1);
      const double hi = (k + l) * width_;
      if (hi > 1.0) return std::nullopt;
      return Interval(k * width_, hi);
    }
    const std::size_t j = i - dyadic_;
    const double x = atoms_[j / 9].at;
    const double w = static_cast<double>(j % 3 + 1) * width_;
    switch ((j % 9) / 3) {
    case 0:
      return Interval(std::max(0.0, x - w), x);
    case 1:
      return Interval(std::max(0.0, x - w), std::min(1.0, x + w));
    default:
      return Interval(x, std::min(1.0, x + w));
    }
  }

private:
  const std::vector<Atom>& atoms_;
  double width_;
  std::size_t dyadic_;
};

// Var(f | I) mu(I) / h(mu(I)); throws DivergenceError for infinite variance.
double interval_ratio(const Distribution& d, const WeightFunction& f, const BoundFunction& h,
                      const Interval& iv) {
  const auto cm = conditional_moments(d, f, iv);
  if (!(cm.mass > 0.0) || cm.variance == 0.0) return 0.0;
  const double hv = h(cm.mass);
  return hv > 0.0 ? cm.variance * cm.mass / hv : HUGE_VAL;
}

LevelBest scan_level(const Distribution& d, const WeightFunction& f, const BoundFunction& h,
                     int level, unsigned workers) {
  const LevelIntervals ivs(d, level);
  const std::size_t total = ivs.size();
  const std::size_t chunks = std::min<std::size_t>(total, std::max(1u, workers) * 8u);
  std::vector<LevelBest> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    LevelBest best;
    const std::size_t begin = total * c / chunks;
    const std::size_t end = total * (c + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) {
      const auto iv = ivs.at(i);
      if (!iv || iv->empty()) continue;
      try {
        const double r = interval_ratio(d, f, h, *iv);
        if (r > best.ratio) {
          best.ratio = r;
          best.index = i;
        }
      } catch (const DivergenceError&) {
        best.divergent = std::min(best.divergent, i);
      }
    }
    partial[c] = best;
  });
  // Chunks are in index order, so strict '>' keeps the first maximiser.
  LevelBest out;
  for (const auto& p : partial) {
    if (p.ratio > out.ratio) {
      out.ratio = p.ratio;
      out.index = p.index;
    }
    out.divergent = std::min(out.divergent, p.divergent);
  }
  return out;
}

bool keeps_growing(const std::vector<double>& profile) {
  constexpr std::size_t window = 4;
  if (profile.size() < window + 1) return false;
  for (std::size_t j = profile.size() - window; j < profile.size(); ++j)
    if (!(profile[j - 1] > 0.0 && profile[j] >= kGrowthFactor * profile[j - 1])) return false;
  return true;
}

} // namespace

HypothesisReport scan_bound(const Distribution& d, const WeightFunction& f, const BoundFunction& h,
                            int depth, unsigned workers) {
  if (depth < 0 || depth > kMaxScanDepth)
    throw DomainError("hypothesis::scan_bound", "depth must lie in [0, 24]");
  HypothesisReport rep;
  rep.depth = depth;
  rep.worst_interval = Interval(0.0, 1.0);
  double worst = 0.0;
  for (int level = 0; level <= depth; ++level) {
    const auto best = scan_level(d, f, h, level, workers);
    const LevelIntervals ivs(d, level);
    rep.intervals_scanned += ivs.size();
    if (best.ratio > worst) {
      worst = best.ratio;
      rep.worst_interval = *ivs.at(best.index);
    }
    if (best.divergent != std::numeric_limits<std::size_t>::max() && !rep.divergent) {
      rep.divergent = true;
      rep.divergent_interval = ivs.at(best.divergent);
    }
    rep.depth_profile.push_back(worst);
  }
  rep.worst_ratio = worst;
  rep.limit_zero = limit_zero_check(h);
  rep.ratio_bounded = ratio_bounded_check(h);
  rep.certifiable = !rep.divergent && !keeps_growing(rep.depth_profile);

  if (rep.divergent || rep.worst_ratio > 1.0 + kHypothesisTolerance) {
    rep.verdict = Verdict::fail;
  } else if (rep.limit_zero.pass && rep.ratio_bounded.pass) {
    rep.verdict = Verdict::pass;
  } else if (!rep.limit_zero.pass && !rep.ratio_bounded.pass) {
    rep.verdict = Verdict::fail;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

FitResult fit_constant(const Distribution& d, const WeightFunction& f, const BoundFunction& shape,
                       int depth, unsigned workers) {
  const BoundFunction unit = shape.with_coef(1.0);
  const auto rep = scan_bound(d, f, unit, depth, workers);
  FitResult out;
  out.depth_profile = rep.depth_profile;
  if (rep.divergent) {
    out.reason = "conditional variance diverges on some interval";
    return out;
  }
  if (!rep.certifiable) {
    out.reason = "worst ratio grows with scan depth";
    return out;
  }
  const double base = rep.worst_ratio;
  if (base == 0.0) {
    // f is a.s. constant on every interval; h = 0 is not a valid bound, fall
    // back to the bounded-f certificate h(x) = sup|f|^2 x^p.
    const double gamma = f.sup_abs();
    if (!std::isfinite(gamma) || gamma == 0.0) {
      out.reason = "degenerate variance and no finite sup|f| to certify with";
      return out;
    }
    out.certifiable = true;
    out.constant = gamma * gamma;
    out.bound = shape.with_coef(out.constant);
    out.reason = "zero conditional variance; bounded-f certificate sup|f|^2";
    return out;
  }
  auto passes = [&](double c) { return base <= c * (1.0 + kHypothesisTolerance); };
  double lo = 0.0, hi = 1.0;
  while (!passes(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  out.certifiable = true;
  out.constant = hi;
  out.bound = shape.with_coef(hi);
  return out;
}

} // namespace wep
