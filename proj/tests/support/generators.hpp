#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/rng.hpp"
#include "wepkit/weight.hpp"

namespace wep::testing {

inline double unif(Engine& eng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng);
}

inline int pick(Engine& eng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }

struct DistOptions {
  bool allow_power = true;
  bool allow_atoms = true;
  bool allow_zero_atom = true;
  bool continuous_only = false;
};

// Mixture of up to two uniform parts, an optional power part and up to three
// atoms; masses are renormalised so that they sum to 1 exactly.
inline Distribution random_distribution(Engine& eng, DistOptions opt = {}) {
  std::vector<ContinuousPart> parts;
  std::vector<Atom> atoms;
  const int n_uniform = pick(eng, opt.allow_power ? 0 : 1, 2);
  for (int i = 0; i < n_uniform; ++i) {
    double a = unif(eng, 0.0, 1.0), b = unif(eng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    if (b - a < 0.05) b = std::min(1.0, a + 0.05), a = b - 0.05;
    parts.push_back(ContinuousPart::uniform(a, b, unif(eng, 0.2, 1.0)));
  }
  if (opt.allow_power && (parts.empty() || pick(eng, 0, 1)))
    parts.push_back(ContinuousPart::power(unif(eng, -0.5, 2.0), unif(eng, 0.3, 1.0), unif(eng, 0.2, 1.0)));
  if (opt.allow_atoms && !opt.continuous_only) {
    const int n_atoms = pick(eng, 0, 3);
    std::vector<double> at;
    if (opt.allow_zero_atom && n_atoms > 0 && pick(eng, 0, 5) == 0) at.push_back(0.0);
    while (static_cast<int>(at.size()) < n_atoms) at.push_back(std::round(unif(eng, 0.0, 1.0) * 1000.0) / 1000.0);
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());
    for (double x : at) atoms.push_back({x, unif(eng, 0.05, 0.6)});
  }
  double total = 0.0;
  for (const auto& p : parts) total += p.weight;
  for (const auto& a : atoms) total += a.mass;
  for (auto& p : parts) p.weight /= total;
  for (auto& a : atoms) a.mass /= total;
  // Absorb the rounding residue in the last component.
  double s = 0.0;
  for (const auto& p : parts) s += p.weight;
  for (const auto& a : atoms) s += a.mass;
  if (!atoms.empty())
    atoms.back().mass += 1.0 - s;
  else
    parts.back().weight += 1.0 - s;
  return Distribution(std::move(parts), std::move(atoms));
}

// Bounded weights only; power weights are produced separately by callers.
inline WeightFunction random_weight(Engine& eng) {
  switch (pick(eng, 0, 4)) {
  case 0:
    return WeightFunction::constant(unif(eng, -2.0, 2.0));
  case 1: {
    std::vector<double> c(static_cast<std::size_t>(pick(eng, 1, 4)));
    for (auto& v : c) v = unif(eng, -2.0, 2.0);
    return WeightFunction::polynomial(c);
  }
  case 2:
    return WeightFunction::cosine();
  case 3:
    return WeightFunction::sine();
  default: {
    std::vector<double> knots = {0.0};
    const int k = pick(eng, 1, 4);
    for (int i = 0; i < k; ++i) knots.push_back(unif(eng, 0.05, 0.95));
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> values(knots.size() - 1);
    for (auto& v : values) v = unif(eng, -2.0, 2.0);
    return WeightFunction::table(knots, values);
  }
  }
}

inline std::vector<double> random_grid(Engine& eng, int max_points = 6) {
  std::vector<double> g;
  const int k = pick(eng, 1, max_points);
  for (int i = 0; i < k; ++i) g.push_back(std::round(unif(eng, 0.01, 1.0) * 1e4) / 1e4);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

} // namespace wep::testing
