#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wepkit/interval.hpp"
#include "wepkit/rng.hpp"

namespace wep {

enum class PartFamily { uniform, power };

//! Continuous mixture component with density coef * x^beta on [lo, hi].
//! uniform(lo, hi) has beta = 0; power(beta, hi) lives on (0, hi], beta > -1.
struct ContinuousPart {
  PartFamily family = PartFamily::uniform;
  double lo = 0.0;
  double hi = 1.0;
  double beta = 0.0;
  double weight = 1.0;

  static ContinuousPart uniform(double lo, double hi, double weight = 1.0);
  static ContinuousPart power(double beta, double hi, double weight = 1.0);

  //! Normalizing constant of the component density.
  double coef() const;
  double density(double x) const;
  //! Component CDF (not weighted).
  double cdf(double t) const;
  double quantile(double u) const;
  //! Component probability of (a, b].
  double mass(double a, double b) const;
};

struct Atom {
  double at = 0.0;
  double mass = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

//! Law of X on [0, 1]: a mixture of continuous parts and atoms. Immutable.
class Distribution {
public:
  Distribution(std::vector<ContinuousPart> parts, std::vector<Atom> atoms);

  static Distribution uniform(double lo = 0.0, double hi = 1.0);
  static Distribution point_mass(double at);

  const std::vector<ContinuousPart>& parts() const noexcept { return parts_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool atomless() const noexcept { return atoms_.empty(); }
  bool purely_atomic() const noexcept;

  //! F(t) = mu([0, t]).
  double cdf(double t) const;
  //! F(t-) = mu([0, t)).
  double cdf_left(double t) const;
  //! mu((lower, upper]).
  double mass(const Interval& iv) const;
  double atom_mass_at(double x) const;
  //! inf{x : F(x) >= u}.
  double quantile(double u) const;
  double median() const { return quantile(0.5); }

  //! One draw by inverse transform.
  double draw(Engine& eng) const;
  //! n sorted i.i.d. draws, reproducible from the seed.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;
  //! n i.i.d. draws conditional on X in iv, in draw order.
  std::vector<double> conditional_sample(const Interval& iv, std::size_t n, std::uint64_t seed) const;
  double conditional_draw(const Interval& iv, Engine& eng) const;

  //! Sorted, de-duplicated points where F changes regime: 0, 1, part
  //! endpoints and atoms.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }

private:
  double continuous_cdf(double t) const;
  double invert_segment(std::size_t seg, double u) const;

  std::vector<ContinuousPart> parts_;
  std::vector<Atom> atoms_;
  std::vector<double> breaks_;
  std::vector<double> cdf_at_breaks_;
  bool standard_uniform_ = false;
};

} // namespace wep
