#include "wepkit/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wepkit/error.hpp"

namespace wep {

WeightFunction WeightFunction::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("weights::constant", "value must be finite");
  WeightFunction w(Family::constant);
  w.coeffs_ = {c};
  return w;
}

WeightFunction WeightFunction::power(double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("weights::power", "alpha must be finite");
  WeightFunction w(Family::power);
  w.alpha_ = alpha;
  return w;
}

WeightFunction WeightFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty())
    throw DomainError("weights::polynomial", "coefficients must not be empty");
  for (double c : coefficients)
    if (!std::isfinite(c)) throw DomainError("weights::polynomial", "coefficients must be finite");
  WeightFunction w(Family::polynomial);
  w.coeffs_ = std::move(coefficients);
  return w;
}

WeightFunction WeightFunction::cosine() { return WeightFunction(Family::cosine); }
WeightFunction WeightFunction::sine() { return WeightFunction(Family::sine); }

WeightFunction WeightFunction::table(std::vector<double> knots, std::vector<double> values) {
  constexpr auto where = "weights::table";
  if (knots.size() < 2 || values.size() + 1 != knots.size())
    throw DomainError(where, "need k+1 knots and k values, k >= 1");
  if (knots.front() != 0.0 || knots.back() != 1.0)
    throw DomainError(where, "knots must start at 0 and end at 1");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw DomainError(where, "knots must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError(where, "values must be finite");
  WeightFunction w(Family::table);
  w.knots_ = std::move(knots);
  w.values_ = std::move(values);
  return w;
}

double WeightFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("weights::eval", "x must lie in [0, 1]");
  switch (family_) {
  case Family::constant:
    return coeffs_[0];
  case Family::power:
    if (x == 0.0) {
      if (alpha_ > 0.0) throw DomainError("weights::eval", "power weight is undefined at x = 0");
      return alpha_ == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(x, -alpha_);
  case Family::polynomial: {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  case Family::cosine:
    return std::cos(2.0 * std::numbers::pi * x);
  case Family::sine:
    return std::sin(2.0 * std::numbers::pi * x);
  case Family::table: {
    if (x == 0.0) return values_.front();
    // Left-continuous: value i on (knots[i], knots[i+1]].
    auto it = std::lower_bound(knots_.begin() + 1, knots_.end(), x);
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
  }
  }
  return 0.0;
}

bool WeightFunction::defined_at_zero() const noexcept {
  return !(family_ == Family::power && alpha_ > 0.0);
}

bool WeightFunction::nonnegative() const {
  switch (family_) {
  case Family::constant:
    return coeffs_[0] >= 0.0;
  case Family::power:
    return true;
  case Family::cosine:
  case Family::sine:
    return false;
  case Family::table:
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
  case Family::polynomial: {
    constexpr int grid = 4096;
    for (int i = 0; i <= grid; ++i)
      if ((*this)(static_cast<double>(i) / grid) < 0.0) return false;
    return sign_change_points().empty();
  }
  }
  return false;
}

double WeightFunction::sup_abs() const {
  switch (family_) {
  case Family::constant:
    return std::abs(coeffs_[0]);
  case Family::power:
    return alpha_ > 0.0 ? HUGE_VAL : 1.0;
  case Family::cosine:
  case Family::sine:
    return 1.0;
  case Family::table: {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  case Family::polynomial: {
    // Extremes sit at the endpoints or where f' changes sign.
    std::vector<double> dc;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) dc.push_back(static_cast<double>(k) * coeffs_[k]);
    double m = std::max(std::abs((*this)(0.0)), std::abs((*this)(1.0)));
    if (!dc.empty()) {
      const auto deriv = WeightFunction::polynomial(dc);
      for (double x : deriv.sign_change_points()) m = std::max(m, std::abs((*this)(x)));
    }
    return m;
  }
  }
  return HUGE_VAL;
}

std::vector<double> WeightFunction::sign_change_points() const {
  switch (family_) {
  case Family::constant:
  case Family::power:
    return {};
  case Family::cosine:
    return {0.25, 0.75};
  case Family::sine:
    return {0.5};
  case Family::table: {
    std::vector<double> out;
    for (std::size_t i = 1; i < values_.size(); ++i)
      if ((values_[i - 1] < 0.0) != (values_[i] < 0.0)) out.push_back(knots_[i]);
    return out;
  }
  case Family::polynomial: {
    // Bracket on a fine grid, then bisect. Roots of even multiplicity that do
    // not change sign are not critical for the compensator.
    constexpr int grid = 4096;
    std::vector<double> out;
    double x0 = 0.0, f0 = (*this)(0.0);
    for (int i = 1; i <= grid; ++i) {
      const double x1 = static_cast<double>(i) / grid;
      const double f1 = (*this)(x1);
      if (f1 == 0.0 && i < grid) {
        out.push_back(x1);
      } else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
        double lo = x0, hi = x1;
        const bool rising = f0 < 0.0;
        for (int it = 0; it < 200 && hi > std::nextafter(lo, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          (((*this)(mid) < 0.0) == rising ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
      if (f1 != 0.0) f0 = f1;
      x0 = x1;
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](double x) { return x <= 0.0 || x >= 1.0; }),
              out.end());
    return out;
  }
  }
  return {};
}

bool WeightFunction::square_integrable_under(const Distribution& d) const {
  if (family_ != Family::power || alpha_ <= 0.0) return true;
  if (d.atom_mass_at(0.0) > 0.0) return false;
  for (const auto& p : d.parts()) {
    if (p.weight <= 0.0 || p.lo > 0.0) continue;
    // density ~ x^beta near 0, f^2 ~ x^(-2 alpha)
    if (p.beta - 2.0 * alpha_ <= -1.0) return false;
  }
  return true;
}

std::string WeightFunction::name() const {
  std::ostringstream os;
  switch (family_) {
  case Family::constant:
    os << "constant(" << coeffs_[0] << ")";
    break;
  case Family::power:
    os << "power(" << alpha_ << ")";
    break;
  case Family::polynomial:
    os << "polynomial(" << coeffs_.size() - 1 << ")";
    break;
  case Family::cosine:
    os << "cos(2 pi x)";
    break;
  case Family::sine:
    os << "sin(2 pi x)";
    break;
  case Family::table:
    os << "table(" << values_.size() << ")";
    break;
  }
  return os.str();
}

} // namespace wep
