#pragma once

#include <stdexcept>
#include <string>

namespace nsm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different grids or have incompatible component counts.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A norm was requested that is not defined for the given field
/// (e.g. negative-order homogeneous norm of a field with nonzero mean).
class UndefinedNorm : public Error {
 public:
  using Error::Error;
};

/// A state violates a structural invariant (divergence, shared grid).
class RejectedState : public Error {
 public:
  using Error::Error;
};

/// The requested time step exceeds a stability limit.
class CflViolation : public Error {
 public:
  CflViolation(std::string constraint, double limit, double dt)
      : Error("time step " + std::to_string(dt) + " exceeds the " + constraint +
              " CFL limit " + std::to_string(limit)),
        constraint_(std::move(constraint)),
        limit_(limit) {}

  const std::string& constraint() const noexcept { return constraint_; }
  double limit() const noexcept { return limit_; }

 private:
  std::string constraint_;
  double limit_;
};

/// A non-finite value appeared in the evolved state.
class Blowup : public Error {
 public:
  explicit Blowup(double t)
      : Error("non-finite value detected at t = " + std::to_string(t)), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Malformed or out-of-range run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsm
