#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace orad {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (e.g. a Gamma pole,
/// t <= 0, an order at or beyond the admissible bound).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The integral defining the requested value does not converge for the
/// declared asymptotics of the input.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach the requested accuracy. Carries the
/// best estimate and its error bound so callers can decide what to do.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_bound)
      : Error(what + " (best estimate " + num(best_estimate) + ", error bound " + num(error_bound) +
              ")"),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  static std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
  }
  double best_estimate_;
  double error_bound_;
};

}  // namespace orad
