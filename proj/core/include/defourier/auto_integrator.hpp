#pragma once

#include <span>
#include <vector>

#include "defourier/quadrature.hpp"

namespace defourier {

struct AutoConfig {
  /// Target tolerance, 0 < eta < 1.
  double eta = 1e-7;
  /// Pilot size N1 (>= 4); the second pilot uses 2 N1.
  long n1 = 10;
  /// Inflation of the pilot half-length, > 1.
  double gamma = 1.2;
  /// Largest N the final rule may use.
  long n_max = 1'000'000;

  /// Throws DomainError on out-of-range fields.
  void validate() const;
};

struct AutoDiagnostics {
  /// Nodes visited: (2 N1 + 1) + (4 N1 + 1) + (2 N + 1).
  long evaluations = 0;
  /// Delta was zero or subnormal and was clamped.
  bool delta_clamped = false;
};

struct AutoResult {
  double value = 0.0;
  /// Half-length N h of the final rule.
  double ell = 0.0;
  /// |F(N1, h1) - F(2 N1, h1 / 2)|.
  double delta = 0.0;
  double d = 0.0;
  long n = 0;
  double h = 0.0;
  /// False when N would exceed n_max; value then holds the finer pilot.
  bool converged = true;
  AutoDiagnostics diagnostics;
};

/// ell = asinh(-ln(eta/3) / (2 pi)), i.e. exp(-2 pi sinh ell) = eta / 3.
double truncation_length(double eta);

/// Fully automatic phi1 rule: estimates the strip half-width d from two
/// pilot runs, then sets N = ceil(ell e^ell / (2 d)), M = N, h = ell / N.
AutoResult auto_transform(const Integrand& f, TransformKind kind, double omega,
                          const AutoConfig& config);

struct SweepPoint {
  double omega;
  double value;
};

/// Determines (N, h) once at omegas.front() and reuses them for every
/// frequency. omegas must be non-empty and ascending.
std::vector<SweepPoint> auto_sweep(const Integrand& f, TransformKind kind,
                                   std::span<const double> omegas, const AutoConfig& config);

}  // namespace defourier
