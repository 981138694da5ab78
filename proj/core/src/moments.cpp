#include "wepkit/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "wepkit/error.hpp"
#include "wepkit/quadrature.hpp"

namespace wep {

namespace {

using Family = WeightFunction::Family;

struct Monomial {
  double coef;
  double exponent;
};

// f^k as a sum of monomials, for the families that have one.
std::vector<Monomial> monomials(const WeightFunction& f, int k) {
  switch (f.family()) {
  case Family::constant:
    return {{std::pow(f.coefficients()[0], k), 0.0}};
  case Family::power:
    return {{1.0, -k * f.alpha()}};
  case Family::polynomial: {
    std::vector<double> acc = {1.0};
    for (int r = 0; r < k; ++r) {
      std::vector<double> next(acc.size() + f.coefficients().size() - 1, 0.0);
      for (std::size_t i = 0; i < acc.size(); ++i)
        for (std::size_t j = 0; j < f.coefficients().size(); ++j)
          next[i + j] += acc[i] * f.coefficients()[j];
      acc = std::move(next);
    }
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (acc[i] != 0.0) out.push_back({acc[i], static_cast<double>(i)});
    return out;
  }
  default:
    return {};
  }
}

// Integral of x^q over [lo, hi].
double monomial_integral(double q, double lo, double hi) {
  if (q == -1.0) {
    if (lo <= 0.0) throw DivergenceError("dist::conditional_moments", "integral of 1/x at 0 diverges");
    return std::log(hi / lo);
  }
  if (lo <= 0.0 && q < -1.0)
    throw DivergenceError("dist::conditional_moments",
                          "non-integrable singularity of f^k * density at 0");
  const double e = q + 1.0;
  const double upper = std::pow(hi, e);
  const double lower = lo > 0.0 ? std::pow(lo, e) : 0.0;
  return (upper - lower) / e;
}

// Antiderivatives of cos(2 pi x)^k and sin(2 pi x)^k.
double trig_antiderivative(Family fam, int k, double x) {
  constexpr double tau = 2.0 * std::numbers::pi;
  if (fam == Family::cosine)
    return k == 1 ? std::sin(tau * x) / tau : 0.5 * x + std::sin(2.0 * tau * x) / (4.0 * tau);
  return k == 1 ? -std::cos(tau * x) / tau : 0.5 * x - std::sin(2.0 * tau * x) / (4.0 * tau);
}

// Integral of f^k * (part density) over [lo, hi], lo >= part.lo, hi <= part.hi.
double closed_form_part(const ContinuousPart& p, const WeightFunction& f, int k, double lo,
                        double hi) {
  switch (f.family()) {
  case Family::constant:
    return std::pow(f.coefficients()[0], k) * p.mass(lo, hi);
  case Family::power:
  case Family::polynomial: {
    double s = 0.0;
    for (const auto& m : monomials(f, k))
      s += m.coef * monomial_integral(p.beta + m.exponent, lo, hi);
    return p.coef() * s;
  }
  case Family::cosine:
  case Family::sine:
    if (p.family != PartFamily::uniform)
      throw DomainError("dist::conditional_moments",
                        "no closed form for trigonometric weights against a power density");
    return p.coef() * (trig_antiderivative(f.family(), k, hi) - trig_antiderivative(f.family(), k, lo));
  case Family::table: {
    double s = 0.0;
    const auto& kn = f.knots();
    for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
      const double l = std::max(lo, kn[i]);
      const double u = std::min(hi, kn[i + 1]);
      if (u > l) s += std::pow(f.values()[i], k) * p.mass(l, u);
    }
    return s;
  }
  }
  return 0.0;
}

double quadrature_part(const ContinuousPart& p, const WeightFunction& f, int k, double lo,
                       double hi) {
  auto integrand = [&](double x) {
    const double v = f(x);
    return (k == 1 ? v : v * v) * p.density(x);
  };
  const bool singular_at_zero =
      lo == 0.0 && ((f.family() == Family::power && f.alpha() > 0.0) ||
                    (p.family == PartFamily::power && p.beta < 0.0));
  // Integrate between the weight's discontinuities separately.
  std::vector<double> cuts = {lo, hi};
  if (f.family() == Family::table)
    for (double x : f.knots())
      if (x > lo && x < hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (i == 0 && singular_at_zero)
      s += quad::integrate_from_zero(integrand, cuts[1]);
    else
      s += quad::integrate(integrand, cuts[i], cuts[i + 1]);
  }
  return s;
}

double zero_atom_value(const WeightFunction& f) {
  if (!f.defined_at_zero())
    throw DivergenceError("weights::compensator", "f is infinite at an atom located at 0");
  return f(0.0);
}

} // namespace

bool has_closed_form(const Distribution& d, const WeightFunction& f) {
  if (f.family() != Family::cosine && f.family() != Family::sine) return true;
  return std::all_of(d.parts().begin(), d.parts().end(), [](const ContinuousPart& p) {
    return p.weight == 0.0 || p.family == PartFamily::uniform;
  });
}

RawMoments raw_moments(const Distribution& d, const WeightFunction& f, const Interval& iv,
                       int order, MomentMethod method, bool include_zero_atom) {
  bool closed = false;
  switch (method) {
  case MomentMethod::automatic:
    closed = has_closed_form(d, f);
    break;
  case MomentMethod::closed_form:
    if (!has_closed_form(d, f))
      throw DomainError("dist::conditional_moments", "no closed form registered for " + f.name());
    closed = true;
    break;
  case MomentMethod::quadrature:
    break;
  }

  RawMoments r;
  r.mass = d.mass(iv);
  for (const auto& p : d.parts()) {
    if (p.weight <= 0.0) continue;
    const double lo = std::max(iv.lower, p.lo);
    const double hi = std::min(iv.upper, p.hi);
    if (hi <= lo) continue;
    for (int k = 1; k <= order; ++k) {
      const double v = closed ? closed_form_part(p, f, k, lo, hi) : quadrature_part(p, f, k, lo, hi);
      (k == 1 ? r.sum_f : r.sum_f2) += p.weight * v;
    }
  }
  for (const auto& a : d.atoms()) {
    if (!iv.contains(a.at)) continue;
    const double v = f(a.at);
    r.sum_f += a.mass * v;
    r.sum_f2 += a.mass * v * v;
  }
  if (include_zero_atom) {
    if (const double m0 = d.atom_mass_at(0.0); m0 > 0.0) {
      const double v = zero_atom_value(f);
      r.mass += m0;
      r.sum_f += m0 * v;
      r.sum_f2 += m0 * v * v;
    }
  }
  if (order < 2) r.sum_f2 = 0.0;
  return r;
}

namespace {

ConditionalMoments finish(const RawMoments& r) {
  if (!(r.mass > 0.0)) return {0.0, 0.0, 0.0};
  const double mean = r.sum_f / r.mass;
  const double var = std::max(0.0, r.sum_f2 / r.mass - mean * mean);
  if (!std::isfinite(mean) || !std::isfinite(var))
    throw DivergenceError("dist::conditional_moments", "conditional moments are not finite");
  return {mean, var, r.mass};
}

} // namespace

ConditionalMoments conditional_moments(const Distribution& d, const WeightFunction& f,
                                       const Interval& iv, MomentMethod method) {
  if (!(d.mass(iv) > 0.0)) return {0.0, 0.0, 0.0};
  return finish(raw_moments(d, f, iv, 2, method, false));
}

ConditionalMoments moments_upto(const Distribution& d, const WeightFunction& f, double s,
                                MomentMethod method) {
  const double F = d.cdf(s);
  if (!(F > 0.0)) return {0.0, 0.0, 0.0};
  if (f.family() == Family::constant) return {f.coefficients()[0] * F / F, 0.0, F};
  auto r = raw_moments(d, f, Interval(0.0, s), 2, method, true);
  r.mass = F;
  return finish(r);
}

double compensator(const Distribution& d, const WeightFunction& f, double t) {
  const double F = d.cdf(t);
  if (f.family() == Family::constant) return f.coefficients()[0] * F;
  if (!(F > 0.0)) return 0.0;
  return raw_moments(d, f, Interval(0.0, t), 1, MomentMethod::automatic, true).sum_f;
}

CompensatorTable::CompensatorTable(const Distribution& d, const WeightFunction& f,
                                   std::vector<double> grid)
    : grid_(std::move(grid)) {
  z_.reserve(grid_.size());
  cdf_.reserve(grid_.size());
  for (double t : grid_) {
    cdf_.push_back(d.cdf(t));
    z_.push_back(compensator(d, f, t));
  }
}

} // namespace wep
