#include "defourier/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "defourier/errors.hpp"

namespace defourier {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Slack for ceil() of quantities carrying rounding noise.
constexpr double kCeilSlack = 1e-9;

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("theta must lie in (0, pi)");
}

void require_n(long n) {
  if (n < 1) throw DomainError("N must be >= 1");
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

double min_theta(const Integrand& f) {
  double theta = std::numeric_limits<double>::infinity();
  for (const Pole& p : f.poles) theta = std::min(theta, PoleGeometry(p.z0, p.residue).theta());
  return theta;
}

double bound_for(const Integrand& f, double omega) {
  return f.bound ? *f.bound : estimate_bound(f, omega);
}

// Smallest strip half-width and the residue weight sum |rho_k| over poles
// whose half-width is within twice the smallest.
struct StripSummary {
  double d;
  double residue_weight;
};

StripSummary summarize(const std::vector<double>& widths, const std::vector<Pole>& poles) {
  const double d = *std::min_element(widths.begin(), widths.end());
  double weight = 0.0;
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (widths[k] <= 2.0 * d) weight += std::abs(poles[k].residue);
  }
  return {d, weight};
}

}  // namespace

PoleGeometry::PoleGeometry(std::complex<double> z0, std::complex<double> residue)
    : z0_(z0), residue_(residue) {
  if (z0.imag() == 0.0) throw DomainError("pole must lie off the real axis");
}

double d_estimate_phi1(double theta, double h) {
  if (!(h > 0.0 && h < kPi)) throw DomainError("d_estimate_phi1 requires 0 < h < pi");
  require_theta(theta);
  return theta / std::log(kPi / h);
}

double d_estimate_phi2(double theta) {
  require_theta(theta);
  return 0.5 * theta;
}

PoleImage pole_image_phi1(std::complex<double> z0, double omega, double h) {
  if (z0.imag() == 0.0) throw DomainError("pole_image_phi1: pole on the real axis");
  require_positive(omega, "omega");
  require_positive(h, "h");

  const cplx q = -2.0 * z0 * omega * h;
  const specfun::BranchIndex region = specfun::branch_of(q);
  const specfun::BranchIndex branch = z0.imag() > 0.0 ? region + 1 : region - 1;
  const cplx w = specfun::lambert_w(branch, q * std::exp(q));
  if (std::abs(w - q) <= 1e-9 * std::max(1.0, std::abs(q))) {
    // W(q e^q) = q gives xi = asinh(0) = 0, which is not a pole.
    throw BranchAmbiguityError("pole_image_phi1: selected branch returns the trivial root");
  }
  const cplx xi = std::asinh(z0 * omega * h / kPi + w / (2.0 * kPi));
  return {xi, branch};
}

double select_h_phi1(long n, double theta) {
  require_n(n);
  require_theta(theta);
  const double nd = static_cast<double>(n);
  return 2.0 / nd * specfun::lambert_w0(std::sqrt(nd * theta / 2.0));
}

double select_h_phi2(long n, double theta, double beta) {
  require_n(n);
  require_theta(theta);
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  return specfun::lambert_w0(nd * kPi * theta / beta) / nd;
}

long select_m_phi2(long n, double h, double alpha, double beta) {
  require_positive(h, "h");
  if (!(alpha > 0.0 && alpha < beta)) throw DomainError("select_m_phi2 requires 0 < alpha < beta");
  const double m = static_cast<double>(n) - std::log(alpha / beta) / h;
  return static_cast<long>(std::ceil(m - kCeilSlack * std::max(1.0, std::abs(m))));
}

TruncationBounds truncation_bounds(const DEMap& map, long n, long m, double h, double omega,
                                   double bound) {
  require_positive(h, "h");
  require_positive(omega, "omega");
  if (!(bound >= 0.0)) throw DomainError("bound C must be >= 0");
  const double tau = kPi / h;
  const double nh = static_cast<double>(n) * h;
  const double mh = static_cast<double>(m) * h;
  if (map.kind() == MapKind::Phi1) {
    return {tau * tau * bound / (2.0 * kPi * omega) * std::exp(-2.0 * kPi * std::sinh(nh)),
            tau * bound / omega * mh * std::exp(-2.0 * kPi * std::sinh(mh))};
  }
  const double beta = map.beta();
  return {tau * tau * bound / (2.0 * beta * omega) * std::exp(-2.0 * beta * std::sinh(nh)),
          tau * bound / omega * mh * std::exp(-map.alpha() * std::exp(mh))};
}

double discretization_bound_residue(std::complex<double> rho0, double d, double h) {
  require_positive(d, "d");
  require_positive(h, "h");
  return 4.0 * kPi * std::abs(rho0) * std::exp(-2.0 * kPi * d / h);
}

double discretization_bound_strip(double n_fd, double d, double h) {
  if (!(n_fd >= 0.0)) throw DomainError("N(f,d) must be >= 0");
  require_positive(d, "d");
  require_positive(h, "h");
  const double a = kPi * d / h;
  return n_fd / (2.0 * std::sinh(a)) * std::exp(-a);
}

ErrorEstimate error_estimate_phi1(long n, double h, double omega, double bound,
                                  std::complex<double> rho0, double d) {
  require_positive(h, "h");
  require_positive(omega, "omega");
  const double decay = std::exp(-2.0 * kPi * std::sinh(static_cast<double>(n) * h));
  ErrorEstimate e;
  e.e_tr = kPi * bound / (2.0 * omega * h * h) * decay;
  e.e_tl = kPi * bound / omega * static_cast<double>(n) * decay;
  e.e_d = discretization_bound_residue(rho0, d, h);
  return e;
}

ErrorEstimate error_estimate_phi2(long n, long m, double h, double omega, double bound,
                                  std::complex<double> rho0, double d, double alpha,
                                  double beta) {
  require_positive(h, "h");
  require_positive(omega, "omega");
  ErrorEstimate e;
  e.e_tr = kPi * kPi * bound / (2.0 * beta * omega * h * h) *
           std::exp(-2.0 * beta * std::sinh(static_cast<double>(n) * h));
  e.e_tl = kPi * bound / omega * static_cast<double>(m) *
           std::exp(-alpha * std::exp(static_cast<double>(m) * h));
  e.e_d = discretization_bound_residue(rho0, d, h);
  return e;
}

double estimate_bound(const Integrand& f, double omega) {
  require_positive(omega, "omega");
  constexpr int kPoints = 128;
  const double lo = std::log(1e-6 / omega);
  const double hi = std::log(1e3 / omega);
  double peak = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = std::exp(lo + (hi - lo) * i / (kPoints - 1));
    const double v = std::abs(f.eval(x));
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  return 1.5 * peak;
}

APrioriPlan plan_phi1(const Integrand& f, double omega, long n) {
  if (f.poles.empty()) throw DomainError("plan_phi1 needs pole data");
  const double theta = min_theta(f);
  const double h = select_h_phi1(n, theta);

  std::vector<double> widths;
  widths.reserve(f.poles.size());
  for (const Pole& p : f.poles) {
    double d;
    try {
      d = std::abs(pole_image_phi1(p.z0, omega, h).xi.imag());
    } catch (const BranchAmbiguityError&) {
      d = d_estimate_phi1(PoleGeometry(p.z0, p.residue).theta(), h);
    }
    widths.push_back(d);
  }
  const StripSummary strip = summarize(widths, f.poles);
  const double bound = bound_for(f, omega);
  return {DEMap::phi1(), QuadratureParams(h, n, n), theta, strip.d,
          error_estimate_phi1(n, h, omega, bound, strip.residue_weight, strip.d)};
}

APrioriPlan plan_phi2(const Integrand& f, double omega, long n) {
  if (f.poles.empty()) throw DomainError("plan_phi2 needs pole data");
  const double theta = min_theta(f);
  const AlphaBeta initial = default_alpha_beta(1.0);
  const double h = select_h_phi2(n, theta, initial.beta);
  const AlphaBeta ab = default_alpha_beta(kPi / h);
  const long m = select_m_phi2(n, h, ab.alpha, ab.beta);

  std::vector<double> widths;
  widths.reserve(f.poles.size());
  for (const Pole& p : f.poles) {
    widths.push_back(d_estimate_phi2(PoleGeometry(p.z0, p.residue).theta()));
  }
  const StripSummary strip = summarize(widths, f.poles);
  const double bound = bound_for(f, omega);
  return {DEMap::phi2(ab.alpha, ab.beta), QuadratureParams(h, m, n), theta, strip.d,
          error_estimate_phi2(n, m, h, omega, bound, strip.residue_weight, strip.d, ab.alpha,
                              ab.beta)};
}

}  // namespace defourier
