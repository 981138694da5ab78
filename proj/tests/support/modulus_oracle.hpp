#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "support/generators.hpp"
#include "wepkit/sample_path.hpp"

namespace wep::testing {

// Step path W on [0, 1] with values[k] on [jumps[k], jumps[k+1]).
struct StepPath {
  std::vector<double> jumps; // jumps[0] = 0
  std::vector<double> values;

  // Values taken on [s, t), plus W(1) when t = 1.
  double osc(double s, double t) const {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      const double start = jumps[k];
      const double end = k + 1 < jumps.size() ? jumps[k + 1] : 2.0;
      const bool hit = start < t ? end > s : (t == 1.0 && start == 1.0);
      if (!hit) continue;
      lo = std::min(lo, values[k]);
      hi = std::max(hi, values[k]);
    }
    return hi - lo;
  }
};

// Exhaustive search over cut sequences. A cut inside a flat gap is only
// useful at the leftmost spacing-feasible position, and a gap cut that could
// have been placed on the jump opening the gap is dominated by that jump cut,
// so from a cut at p the next cut is p + delta or a jump beyond it.
inline double brute_force(const StepPath& w, double delta) {
  constexpr double tol = 1e-12;
  std::map<double, double> memo;
  std::function<double(double)> rest = [&](double p) -> double {
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    double best = HUGE_VAL;
    if (1.0 - p >= delta - tol) best = w.osc(p, 1.0);
    std::vector<double> next;
    if (p + delta < 1.0) next.push_back(p + delta);
    for (double j : w.jumps)
      if (j > p + delta - tol && j < 1.0) next.push_back(j);
    for (double c : next) {
      if (c - p < delta - tol || c >= 1.0) continue;
      const double here = w.osc(p, c);
      if (here >= best) continue;
      best = std::min(best, std::max(here, rest(c)));
    }
    memo[p] = best;
    return best;
  };
  return rest(0.0);
}

struct StepCase {
  SamplePath path;
  StepPath oracle;
};

// Purely atomic mu with at most 12 atoms, a bounded weight and n <= 30; the
// oracle path is rebuilt from the sample by direct summation.
inline StepCase random_step_case(Engine& eng) {
  const int atoms = pick(eng, 1, 12);
  std::vector<double> at;
  while (static_cast<int>(at.size()) < atoms) at.push_back(std::round(unif(eng, 0.0, 1.0) * 200) / 200);
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  std::vector<Atom> list;
  for (double x : at) list.push_back({x, 1.0 / static_cast<double>(at.size())});
  double s = 0.0;
  for (const auto& a : list) s += a.mass;
  list.back().mass += 1.0 - s;
  const auto d = std::make_shared<const Distribution>(Distribution({}, list));
  const auto f = std::make_shared<const WeightFunction>(random_weight(eng));
  const std::size_t n = static_cast<std::size_t>(pick(eng, 1, 30));
  auto path = SamplePath::simulate(d, f, n, SamplingMode::fixed_n, eng);

  StepPath w;
  w.jumps.push_back(0.0);
  for (double x : at)
    if (x > 0.0) w.jumps.push_back(x);
  for (double start : w.jumps) {
    double emp = 0.0, comp = 0.0;
    for (double x : path.values())
      if (x <= start) emp += (*f)(x);
    for (const auto& a : list)
      if (a.at <= start) comp += a.mass * (*f)(a.at);
    w.values.push_back(std::sqrt(static_cast<double>(n)) * (emp / static_cast<double>(n) - comp));
  }
  return {std::move(path), std::move(w)};
}

} // namespace wep::testing
