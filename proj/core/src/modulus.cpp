#include "wepkit/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"

namespace wep {

namespace {

// Chains a + k delta are only added while the candidate set stays this small.
constexpr std::size_t kChainBudget = 4096;
// Cut points closer than this to each other are merged.
constexpr double kMergeTol = 1e-13;

std::vector<double> candidate_points(const std::vector<double>& jumps, double delta) {
  std::vector<double> pts = {0.0, 1.0};
  for (double x : jumps)
    if (x > 0.0 && x < 1.0) pts.push_back(x);
  const int cells = static_cast<int>(std::ceil(4.0 / delta));
  for (int i = 1; i < cells; ++i) {
    const double g = 0.25 * delta * i;
    if (g < 1.0) pts.push_back(g);
  }
  const auto per_anchor = static_cast<std::size_t>(std::floor(1.0 / delta));
  if ((jumps.size() + 1) * per_anchor <= kChainBudget) {
    // With a flat drift only the set of cut jumps matters, and a feasible set
    // is realised by pushing every gap cut as far left as spacing allows:
    // anchor + k delta for anchors 0 and the jumps.
    std::vector<double> anchors = {0.0};
    for (double x : jumps)
      if (x > 0.0 && x < 1.0) anchors.push_back(x);
    for (double a : anchors)
      for (std::size_t k = 1; a + static_cast<double>(k) * delta < 1.0; ++k)
        pts.push_back(a + static_cast<double>(k) * delta);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts)
    if (out.empty() || p - out.back() > kMergeTol) out.push_back(p);
  // Keep jump locations exact after merging.
  for (double x : jumps) {
    auto it = std::lower_bound(out.begin(), out.end(), x - kMergeTol);
    if (it != out.end() && std::abs(*it - x) <= kMergeTol) *it = x;
  }
  out.back() = 1.0;
  return out;
}

// Oscillation of the continuous part of the drift over [s, t].
double drift_oscillation(const Distribution& d, const WeightFunction& f, double s, double t,
                         double root_n) {
  if (d.purely_atomic()) return 0.0;
  std::vector<double> pts = {s, t};
  for (double x : f.sign_change_points())
    if (x > s && x < t) pts.push_back(x);
  for (const auto& p : d.parts()) {
    if (p.lo > s && p.lo < t) pts.push_back(p.lo);
    if (p.hi > s && p.hi < t) pts.push_back(p.hi);
  }
  std::sort(pts.begin(), pts.end());
  double atoms_before = 0.0;
  std::size_t a = 0;
  const auto& atoms = d.atoms();
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (double x : pts) {
    while (a < atoms.size() && atoms[a].at <= x) {
      if (atoms[a].at > s || x == s) atoms_before += atoms[a].mass * f(atoms[a].at);
      ++a;
    }
    const double zc = compensator(d, f, x) - atoms_before;
    lo = std::min(lo, zc);
    hi = std::max(hi, zc);
  }
  return root_n * (hi - lo);
}

} // namespace

ModulusResult modulus(const SamplePath& path, double delta, Component which) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("process::modulus", "delta must lie in (0, 1)");
  const auto jumps = path.jump_points();
  const auto pts = candidate_points(jumps, delta);
  const std::size_t m = pts.size();

  // Range over each elementary block [pts[k], pts[k+1]); no jump lies inside.
  std::vector<Extremes> elem(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) elem[k] = path.segment_extremes(which, pts[k], pts[k + 1]);
  // The last block is [t_{k-1}, 1].
  elem[m - 2].add(path.value(which, 1.0));

  // best[j]: optimal max block oscillation of a partition of [0, pts[j]).
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr double slack = 1e-12;
  std::vector<double> best(m, inf);
  std::vector<std::size_t> from(m, 0);
  best[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j) {
    Extremes block;
    // Extend the last block leftwards from pts[j]; its oscillation only grows.
    for (std::size_t i = j; i-- > 0;) {
      block.merge(elem[i]);
      const double osc = block.spread();
      if (osc >= best[j]) break;
      if (pts[j] - pts[i] < delta - slack || best[i] == inf) continue;
      const double cand = std::max(best[i], osc);
      if (cand < best[j]) {
        best[j] = cand;
        from[j] = i;
      }
    }
  }

  ModulusResult out;
  out.value = best[m - 1];
  for (std::size_t j = m - 1;; j = from[j]) {
    out.partition.push_back(pts[j]);
    if (j == 0) break;
  }
  std::reverse(out.partition.begin(), out.partition.end());

  const double root_n = std::sqrt(static_cast<double>(path.n()));
  const double cell = 0.25 * delta;
  for (double s = 0.0; s < 1.0; s += cell)
    out.drift_bound = std::max(out.drift_bound, drift_oscillation(path.distribution(), path.weight(), s,
                                                                  std::min(1.0, s + cell), root_n));
  return out;
}

} // namespace wep
