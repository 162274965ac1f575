#pragma once

#include <stdexcept>
#include <string>

namespace mollow {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter outside its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Integrator step larger than the stability guard allows.
class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double dt, double dt_max)
      : Error(what), dt_(dt), dt_max_(dt_max) {}
  double dt() const noexcept { return dt_; }
  double dt_max() const noexcept { return dt_max_; }

 private:
  double dt_;
  double dt_max_;
};

/// Steady-state system is singular (or numerically so).
class DegenerateParameters : public Error {
 public:
  DegenerateParameters(const std::string& what, double determinant)
      : Error(what), determinant_(determinant) {}
  double determinant() const noexcept { return determinant_; }

 private:
  double determinant_;
};

/// Requested atom count exceeds what the dense operator oracle can hold.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, int n_atoms, int limit)
      : Error(what), n_atoms_(n_atoms), limit_(limit) {}
  int n_atoms() const noexcept { return n_atoms_; }
  int limit() const noexcept { return limit_; }

 private:
  int n_atoms_;
  int limit_;
};

/// Evaluation hit a pole of a closed-form expression.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A first-order intensity vanished where it cannot for these sources.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mollow
