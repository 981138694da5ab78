#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wep {

//! Base of every exception thrown by wepkit. The message always starts with
//! "<module>::<operation>: " so callers can tell where a failure came from.
class Error : public std::runtime_error {
public:
  Error(std::string_view where, std::string_view what)
      : std::runtime_error(std::string(where) + ": " + std::string(what)) {}
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

//! An integral (conditional moment, compensator) does not converge.
class DivergenceError : public Error {
public:
  using Error::Error;
};

//! Numerical failure that is not a divergence, e.g. a covariance matrix that
//! stays indefinite after the jitter ladder.
class NumericalError : public Error {
public:
  NumericalError(std::string_view where, std::string_view what, double value = 0.0)
      : Error(where, what), value_(value) {}

  double value() const noexcept { return value_; }

private:
  double value_;
};

//! Malformed or inconsistent configuration / JSON description.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace wep
