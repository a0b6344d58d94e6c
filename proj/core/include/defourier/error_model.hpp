#pragma once

#include <complex>

#include "defourier/de_maps.hpp"
#include "defourier/quadrature.hpp"
#include "defourier/specfun.hpp"

namespace defourier {

/// A conjugate pole pair (z0, conj z0) of f with residue Res(f, z0).
class PoleGeometry {
 public:
  /// Throws DomainError if Im(z0) == 0.
  PoleGeometry(std::complex<double> z0, std::complex<double> residue);

  std::complex<double> z0() const { return z0_; }
  std::complex<double> residue() const { return residue_; }
  /// |arg z0| in (0, pi).
  double theta() const { return std::abs(std::arg(z0_)); }

 private:
  std::complex<double> z0_;
  std::complex<double> residue_;
};

/// Error components of a truncated rule. These are asymptotic estimates,
/// not certified bounds.
struct ErrorEstimate {
  double e_d = 0.0;
  double e_tl = 0.0;
  double e_tr = 0.0;

  double total() const { return e_d + e_tl + e_tr; }
};

/// Half-width of the analyticity strip of the phi1-transformed integrand:
/// theta / ln(pi/h). Requires 0 < h < pi.
double d_estimate_phi1(double theta, double h);

/// Strip half-width for phi2: theta / 2.
double d_estimate_phi2(double theta);

struct PoleImage {
  /// Pole of xi -> f((tau/omega) phi1(xi)); add h/2 for the cosine-rule t.
  std::complex<double> xi;
  /// Lambert W branch used for the image.
  specfun::BranchIndex branch;
};

/// Image of the pole z0 under the phi1 change of variables, from the
/// sinh-simplified equation
///
///   xi = asinh(z0 omega h / pi + W(q e^q) / (2 pi)),  q = -2 z0 omega h.
///
/// The branch of W is one step above the region containing q when
/// Im z0 > 0 and one step below when Im z0 < 0. Throws BranchAmbiguityError
/// if the region of q cannot be resolved.
PoleImage pole_image_phi1(std::complex<double> z0, double omega, double h);

/// h* = (2/N) W0(sqrt(N theta / 2)).
double select_h_phi1(long n, double theta);
/// h = (1/N) W0(N pi theta / beta).
double select_h_phi2(long n, double theta, double beta);
/// M = ceil(N - ln(alpha/beta) / h) >= N. Throws DomainError unless
/// 0 < alpha < beta.
long select_m_phi2(long n, double h, double alpha, double beta);

struct TruncationBounds {
  double e_tr;
  double e_tl;
};

/// Right/left truncation estimates of the rule on map with |f| <= C.
TruncationBounds truncation_bounds(const DEMap& map, long n, long m, double h, double omega,
                                   double bound);

/// 4 pi |rho0| exp(-2 pi d / h).
double discretization_bound_residue(std::complex<double> rho0, double d, double h);

/// N(f,d) exp(-pi d / h) / (2 sinh(pi d / h)) for a caller-supplied N(f,d).
double discretization_bound_strip(double n_fd, double d, double h);

/// Total error of the phi1 rule with M = N.
ErrorEstimate error_estimate_phi1(long n, double h, double omega, double bound,
                                  std::complex<double> rho0, double d);

/// Total error of the phi2 rule.
ErrorEstimate error_estimate_phi2(long n, long m, double h, double omega, double bound,
                                  std::complex<double> rho0, double d, double alpha,
                                  double beta);

/// max |f| on 128 log-spaced points of [1e-6/omega, 1e3/omega], times 1.5.
double estimate_bound(const Integrand& f, double omega);

/// A priori rule for one map: parameters chosen from pole data and the
/// matching error estimate.
struct APrioriPlan {
  DEMap map;
  QuadratureParams params;
  double theta;
  double d;
  ErrorEstimate estimate;
};

/// phi1 rule with M = N and h = select_h_phi1(N, theta). d comes from the
/// pole images (falling back to d_estimate_phi1); the residue term sums the
/// poles whose strip half-width is within twice the smallest one.
/// Throws DomainError if f has no pole data.
APrioriPlan plan_phi1(const Integrand& f, double omega, long n);

/// phi2 rule with default (alpha, beta), h = select_h_phi2 and
/// M = select_m_phi2; d = theta / 2 per pole.
APrioriPlan plan_phi2(const Integrand& f, double omega, long n);

}  // namespace defourier
