#pragma once

#include <stdexcept>
#include <string>

namespace defourier {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iteration exhausted its budget without meeting its residual target.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// No Lambert W branch (or more than one) reproduces the requested point.
class BranchAmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A complex argument hit a pole of a double-exponential map.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The user integrand failed (threw or returned a non-finite value).
class IntegrandError : public std::runtime_error {
 public:
  IntegrandError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}

  /// Abscissa at which the integrand was evaluated.
  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Two independent reference computations disagree.
class OracleDisagreementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace defourier
