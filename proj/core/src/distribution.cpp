#include "wepkit/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wepkit/error.hpp"

namespace wep {

namespace {

constexpr double kMassTolerance = 1e-12;

} // namespace

ContinuousPart ContinuousPart::uniform(double lo, double hi, double weight) {
  return ContinuousPart{PartFamily::uniform, lo, hi, 0.0, weight};
}

ContinuousPart ContinuousPart::power(double beta, double hi, double weight) {
  return ContinuousPart{PartFamily::power, 0.0, hi, beta, weight};
}

double ContinuousPart::coef() const {
  if (family == PartFamily::uniform) return 1.0 / (hi - lo);
  return (beta + 1.0) / std::pow(hi, beta + 1.0);
}

double ContinuousPart::density(double x) const {
  if (x < lo || x > hi) return 0.0;
  if (family == PartFamily::uniform) return coef();
  if (x <= 0.0) return beta < 0.0 ? HUGE_VAL : (beta == 0.0 ? coef() : 0.0);
  return coef() * std::pow(x, beta);
}

double ContinuousPart::cdf(double t) const {
  if (t <= lo) return 0.0;
  if (t >= hi) return 1.0;
  if (family == PartFamily::uniform) return (t - lo) / (hi - lo);
  return std::pow(t / hi, beta + 1.0);
}

double ContinuousPart::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (family == PartFamily::uniform) return lo + u * (hi - lo);
  return hi * std::pow(u, 1.0 / (beta + 1.0));
}

double ContinuousPart::mass(double a, double b) const {
  const double l = std::max(a, lo);
  const double u = std::min(b, hi);
  if (u <= l) return 0.0;
  if (family == PartFamily::uniform) return (u - l) / (hi - lo);
  return cdf(u) - cdf(l);
}

Distribution::Distribution(std::vector<ContinuousPart> parts, std::vector<Atom> atoms)
    : parts_(std::move(parts)), atoms_(std::move(atoms)) {
  constexpr auto where = "dist::Distribution";
  double total = 0.0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& p = parts_[i];
    const std::string tag = "continuous[" + std::to_string(i) + "]";
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
      throw DomainError(where, tag + ".weight must be finite and >= 0");
    if (p.family == PartFamily::uniform) {
      if (!(p.lo >= 0.0 && p.lo < p.hi && p.hi <= 1.0))
        throw DomainError(where, tag + ": uniform needs 0 <= lo < hi <= 1");
    } else {
      if (!(p.beta > -1.0) || !std::isfinite(p.beta))
        throw DomainError(where, tag + ".beta must be > -1");
      if (!(p.hi > 0.0 && p.hi <= 1.0))
        throw DomainError(where, tag + ".hi must lie in (0, 1]");
      if (p.lo != 0.0) throw DomainError(where, tag + ": power density starts at 0");
    }
    total += p.weight;
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string tag = "atoms[" + std::to_string(i) + "]";
    if (!(a.at >= 0.0 && a.at <= 1.0)) throw DomainError(where, tag + ".at must lie in [0, 1]");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw DomainError(where, tag + ".mass must be > 0");
    if (i > 0 && !(a.at > atoms_[i - 1].at))
      throw DomainError(where, tag + ".at: atom locations must be strictly increasing");
    total += a.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw DomainError(where, "weights and atom masses sum to " + std::to_string(total) +
                                 ", expected 1");

  breaks_ = {0.0, 1.0};
  for (const auto& p : parts_) {
    if (p.weight <= 0.0) continue;
    breaks_.push_back(p.lo);
    breaks_.push_back(p.hi);
  }
  for (const auto& a : atoms_) breaks_.push_back(a.at);
  std::sort(breaks_.begin(), breaks_.end());
  breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
  cdf_at_breaks_.reserve(breaks_.size());
  for (double b : breaks_) cdf_at_breaks_.push_back(cdf(b));

  standard_uniform_ = atoms_.empty() && parts_.size() == 1 &&
                      parts_[0].family == PartFamily::uniform && parts_[0].lo == 0.0 &&
                      parts_[0].hi == 1.0;
}

Distribution Distribution::uniform(double lo, double hi) {
  return Distribution({ContinuousPart::uniform(lo, hi)}, {});
}

Distribution Distribution::point_mass(double at) { return Distribution({}, {{at, 1.0}}); }

bool Distribution::purely_atomic() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const ContinuousPart& p) { return p.weight == 0.0; });
}

double Distribution::continuous_cdf(double t) const {
  double s = 0.0;
  for (const auto& p : parts_)
    if (p.weight > 0.0) s += p.weight * p.cdf(t);
  return s;
}

double Distribution::cdf(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("dist::cdf", "t must lie in [0, 1]");
  if (t == 1.0) return 1.0;
  double s = continuous_cdf(t);
  for (const auto& a : atoms_) {
    if (a.at > t) break;
    s += a.mass;
  }
  return std::clamp(s, 0.0, 1.0);
}

double Distribution::cdf_left(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("dist::cdf_left", "t must lie in [0, 1]");
  double s = continuous_cdf(t);
  for (const auto& a : atoms_) {
    if (a.at >= t) break;
    s += a.mass;
  }
  return std::clamp(s, 0.0, 1.0);
}

double Distribution::mass(const Interval& iv) const {
  double s = 0.0;
  for (const auto& p : parts_)
    if (p.weight > 0.0) s += p.weight * p.mass(iv.lower, iv.upper);
  for (const auto& a : atoms_)
    if (iv.contains(a.at)) s += a.mass;
  return std::max(0.0, s);
}

double Distribution::atom_mass_at(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.at < v; });
  return (it != atoms_.end() && it->at == x) ? it->mass : 0.0;
}

double Distribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("dist::quantile", "u must lie in [0, 1]");
  if (standard_uniform_) return u;
  // First breakpoint whose CDF reaches u; the answer lies in (previous, that].
  auto it = std::lower_bound(cdf_at_breaks_.begin(), cdf_at_breaks_.end(), u);
  if (it == cdf_at_breaks_.end()) it = std::prev(cdf_at_breaks_.end());
  const auto seg = static_cast<std::size_t>(it - cdf_at_breaks_.begin());
  if (seg == 0) return breaks_[0];
  const double right = breaks_[seg];
  if (cdf_at_breaks_[seg] - atom_mass_at(right) < u) return right;
  return invert_segment(seg, u);
}

double Distribution::invert_segment(std::size_t seg, double u) const {
  const double a = breaks_[seg - 1];
  const double b = breaks_[seg];
  const double base = cdf_at_breaks_[seg - 1];
  const ContinuousPart* single = nullptr;
  int active = 0;
  for (const auto& p : parts_) {
    if (p.weight > 0.0 && p.lo <= a && p.hi >= b) {
      single = &p;
      ++active;
    }
  }
  if (active == 0) return b;
  if (active == 1) {
    const double x = single->quantile(single->cdf(a) + (u - base) / single->weight);
    return std::clamp(x, std::nextafter(a, b), b);
  }
  // Several overlapping parts: F is continuous and strictly increasing on
  // (a, b), bisect for the smallest x with F(x) >= u.
  double lo = a, hi = b;
  for (int it = 0; it < 200 && hi > std::nextafter(lo, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    double f = base;
    for (const auto& p : parts_)
      if (p.weight > 0.0 && p.lo <= a && p.hi >= b) f += p.weight * (p.cdf(mid) - p.cdf(a));
    (f >= u ? hi : lo) = mid;
  }
  return hi;
}

double Distribution::draw(Engine& eng) const {
  const double u = uniform_open_closed(eng);
  return standard_uniform_ ? u : quantile(u);
}

std::vector<double> Distribution::sample(std::size_t n, std::uint64_t seed) const {
  auto eng = make_engine(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = draw(eng);
  std::sort(xs.begin(), xs.end());
  return xs;
}

double Distribution::conditional_draw(const Interval& iv, Engine& eng) const {
  const double fa = cdf(iv.lower);
  const double fb = cdf(iv.upper);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double x = quantile(std::min(fb, fa + uniform_open_closed(eng) * (fb - fa)));
    if (iv.contains(x)) return x;
  }
  // Only reachable when (fb - fa) is at the rounding level of fa.
  return iv.upper;
}

std::vector<double> Distribution::conditional_sample(const Interval& iv, std::size_t n,
                                                     std::uint64_t seed) const {
  if (!(mass(iv) > 0.0))
    throw DomainError("dist::conditional_sample",
                      "zero-mass interval: the conditional law is undefined "
                      "(conditional moments use the convention E = 0)");
  auto eng = make_engine(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = conditional_draw(iv, eng);
  return xs;
}

} // namespace wep
