#include "wepkit/sample_path.hpp"

#include <random>

#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"

namespace wep {

SamplePath::SamplePath(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode,
                       std::vector<double> xs)
    : dist_(std::move(d)), weight_(std::move(f)), n_(n), mode_(mode), xs_(std::move(xs)) {
  if (!dist_ || !weight_) throw DomainError("process::simulate", "distribution and weight are required");
  if (n_ == 0) throw DomainError("process::simulate", "n must be >= 1");
  std::sort(xs_.begin(), xs_.end());
  fx_.reserve(xs_.size());
  prefix_.reserve(xs_.size() + 1);
  prefix_.push_back(0.0);
  for (double x : xs_) {
    double v;
    try {
      v = (*weight_)(x);
    } catch (const DomainError& e) {
      throw DomainError("process::simulate",
                        std::string("weight evaluation failed at a sampled point: ") + e.what());
    }
    fx_.push_back(v);
    prefix_.push_back(prefix_.back() + v);
  }
}

SamplePath SamplePath::simulate(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode,
                                std::uint64_t seed) {
  auto eng = make_engine(seed);
  return simulate(std::move(d), std::move(f), n, mode, eng);
}

SamplePath SamplePath::simulate(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode,
                                Engine& eng) {
  if (n == 0) throw DomainError("process::simulate", "n must be >= 1");
  if (!d) throw DomainError("process::simulate", "distribution is required");
  std::size_t count = n;
  if (mode == SamplingMode::poissonized) {
    std::poisson_distribution<long long> pois(static_cast<double>(n));
    count = static_cast<std::size_t>(pois(eng));
  }
  std::vector<double> xs(count);
  for (auto& x : xs) x = d->draw(eng);
  return SamplePath(std::move(d), std::move(f), n, mode, std::move(xs));
}

SamplePath SamplePath::from_points(DistPtr d, WeightPtr f, std::size_t n, std::vector<double> points,
                                   SamplingMode mode) {
  for (double x : points)
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("process::from_points", "points must lie in [0, 1]");
  return SamplePath(std::move(d), std::move(f), n, mode, std::move(points));
}

std::size_t SamplePath::count_upto(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("process::count_upto", "t must lie in [0, 1]");
  return static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), t) - xs_.begin());
}

std::size_t SamplePath::count_below(double t) const {
  return static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), t) - xs_.begin());
}

double SamplePath::evaluate_z(double t) const {
  return prefix_[count_upto(t)] / static_cast<double>(n_);
}

double SamplePath::evaluate_y(double t) const {
  return std::sqrt(static_cast<double>(n_)) * (evaluate_z(t) - compensator(*dist_, *weight_, t));
}

SamplePath::State SamplePath::state_at(double t) const {
  const std::size_t k = count_upto(t);
  return {static_cast<double>(k), prefix_[k], compensator(*dist_, *weight_, t), dist_->cdf(t)};
}

SamplePath::State SamplePath::state_before(double t) const {
  if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  const std::size_t k = count_below(t);
  double z = compensator(*dist_, *weight_, t);
  if (const double m = dist_->atom_mass_at(t); m > 0.0) z -= m * (*weight_)(t);
  return {static_cast<double>(k), prefix_[k], z, dist_->cdf_left(t)};
}

double SamplePath::component(Component which, const State& s) const {
  const double n = static_cast<double>(n_);
  const double rn = std::sqrt(n);
  const double y = rn * (s.sum / n - s.z);
  if (which == Component::y) return y;
  // Y'(t) = sum over the N points of (f(X) - E(f(X) | X <= t)) / sqrt(n).
  const double mean = s.cdf > 0.0 ? s.z / s.cdf : 0.0;
  const double yp = (s.sum - s.count * mean) / rn;
  return which == Component::y_prime ? yp : y - yp;
}

Decomposition SamplePath::decompose(double t) const {
  const auto s = state_at(t);
  const double yp = component(Component::y_prime, s);
  return {yp, component(Component::y, s) - yp};
}

double SamplePath::value(Component which, double t) const { return component(which, state_at(t)); }

double SamplePath::left_limit(Component which, double t) const {
  return component(which, state_before(t));
}

double SamplePath::drift(Component which, double t, std::size_t count) const {
  return component(which, {static_cast<double>(count), prefix_[count],
                           compensator(*dist_, *weight_, t), dist_->cdf(t)});
}

std::vector<double> SamplePath::jump_points() const {
  std::vector<double> pts;
  pts.reserve(xs_.size() + dist_->atoms().size());
  std::unique_copy(xs_.begin(), xs_.end(), std::back_inserter(pts));
  for (const auto& a : dist_->atoms()) pts.push_back(a.at);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> SamplePath::critical_points(double s, double t) const {
  std::vector<double> out;
  for (double x : weight_->sign_change_points())
    if (x > s && x < t) out.push_back(x);
  for (const auto& p : dist_->parts()) {
    if (p.weight <= 0.0) continue;
    if (p.lo > s && p.lo < t) out.push_back(p.lo);
    if (p.hi > s && p.hi < t) out.push_back(p.hi);
  }
  return out;
}

Extremes SamplePath::segment_extremes(Component which, double s, double t) const {
  Extremes ext;
  ext.add(value(which, s));
  if (t <= s) return ext;
  ext.add(left_limit(which, t));
  if (dist_->purely_atomic()) return ext;

  const std::size_t count = count_upto(s);
  if (which == Component::y) {
    // The drift is -sqrt(n) Z; Z is monotone between sign changes of f.
    for (double x : critical_points(s, t)) ext.add(drift(which, x, count));
    return ext;
  }

  // Y' and Y'' mix Z and F nonlinearly: sample the segment, then refine each
  // sampled local extremum by golden-section search.
  constexpr int samples = 16;
  std::vector<double> ts = {s};
  for (int i = 1; i <= samples; ++i) ts.push_back(s + (t - s) * i / (samples + 1));
  for (double x : critical_points(s, t)) ts.push_back(x);
  ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  std::vector<double> vs(ts.size());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) vs[i] = drift(which, ts[i], count);
  vs.back() = left_limit(which, t);
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
    ext.add(vs[i]);
    for (double sign : {1.0, -1.0}) {
      if (!(sign * vs[i] >= sign * vs[i - 1] && sign * vs[i] >= sign * vs[i + 1])) continue;
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = ts[i - 1], b = ts[i + 1];
      double c = b - phi * (b - a), d = a + phi * (b - a);
      double fc = sign * drift(which, c, count), fd = sign * drift(which, d, count);
      for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
          b = d, d = c, fd = fc;
          c = b - phi * (b - a);
          fc = sign * drift(which, c, count);
        } else {
          a = c, c = d, fc = fd;
          d = a + phi * (b - a);
          fd = sign * drift(which, d, count);
        }
      }
      ext.add(sign * std::max(fc, fd));
    }
  }
  return ext;
}

double SamplePath::oscillation(const Interval& iv, Component which) const {
  if (iv.empty()) return 0.0;
  const auto jumps = jump_points();
  auto it = std::upper_bound(jumps.begin(), jumps.end(), iv.lower);
  Extremes ext;
  double prev = iv.lower;
  for (; it != jumps.end() && *it <= iv.upper; ++it) {
    ext.merge(segment_extremes(which, prev, *it));
    prev = *it;
  }
  if (prev < iv.upper) ext.merge(segment_extremes(which, prev, iv.upper));
  ext.add(value(which, iv.upper));
  return ext.spread();
}

} // namespace wep
