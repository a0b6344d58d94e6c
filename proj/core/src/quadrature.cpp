#include "defourier/quadrature.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "defourier/errors.hpp"

namespace defourier {
namespace {

// Weights below this are treated as zero and f is not evaluated.
constexpr double kWeightFloor = 1e-320;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double shift_for(TransformKind kind, double h) {
  return kind == TransformKind::Cosine ? 0.5 * h : 0.0;
}

// trig(tau phi(xi)). On xi > 0 the phase tau*xi is an odd multiple of pi/2
// (cosine) or a multiple of pi (sine), so the factor reduces to
// (-1)^j sin(tau (phi(xi) - xi)), which keeps full relative accuracy in the
// right tail where it decays double exponentially.
double oscillatory_factor(const DEMap& map, TransformKind kind, double tau, long j,
                          double xi) {
  if (xi > 0.0) {
    const double s = std::sin(tau * phi_excess(map, xi));
    return (j % 2 == 0) ? s : -s;
  }
  const double arg = tau * phi(map, xi);
  return kind == TransformKind::Cosine ? std::cos(arg) : std::sin(arg);
}

// Node abscissa and the part of the weight without the (tau/omega) h factor.
struct RawNode {
  double x;
  double scaled_weight;
};

RawNode raw_node(const DEMap& map, TransformKind kind, double omega, double tau, double h,
                 long j) {
  const double xi = static_cast<double>(j) * h - shift_for(kind, h);
  const double x = tau / omega * phi(map, xi);
  const double w = oscillatory_factor(map, kind, tau, j, xi) * phi_prime(map, xi);
  return {x, w};
}

double checked_eval(const Integrand& f, double x) {
  double value;
  try {
    value = f.eval(x);
  } catch (const std::exception& e) {
    throw IntegrandError(std::string("integrand failed at x = ") + std::to_string(x) + ": " +
                             e.what(),
                         x);
  }
  if (!std::isfinite(value)) {
    throw IntegrandError("integrand returned a non-finite value at x = " + std::to_string(x),
                         x);
  }
  return value;
}

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be positive and finite");
  }
}

}  // namespace

void validate(const Integrand& f) {
  if (!f.eval) throw DomainError("integrand has no evaluation callback");
  if (f.bound && !(*f.bound >= 0.0)) throw DomainError("integrand bound C must be >= 0");
  double previous = 0.0;
  for (const Pole& p : f.poles) {
    const double d = std::abs(p.z0.imag());
    if (d == 0.0) throw DomainError("integrand pole on the real axis");
    if (d < previous) throw DomainError("integrand poles must be sorted by |Im z0|");
    previous = d;
  }
}

QuadratureParams::QuadratureParams(double h, long m, long n) : h_(h), m_(m), n_(n) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("mesh size h must be positive");
  if (m < 0 || n < 0) throw DomainError("truncation indices M, N must be non-negative");
}

double QuadratureParams::tau() const { return std::numbers::pi / h_; }

std::vector<Node> nodes(const DEMap& map, TransformKind kind, double omega,
                        const QuadratureParams& params) {
  require_positive_omega(omega);
  const double h = params.h();
  const double tau = params.tau();
  const double scale = tau / omega * h;
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(params.node_count()));
  for (long j = -params.m(); j <= params.n(); ++j) {
    const RawNode r = raw_node(map, kind, omega, tau, h, j);
    out.push_back({r.x, scale * r.scaled_weight});
  }
  return out;
}

double transform(const Integrand& f, TransformKind kind, double omega, const DEMap& map,
                 const QuadratureParams& params) {
  require_positive_omega(omega);
  const double h = params.h();
  const double tau = params.tau();
  const double scale = tau / omega * h;
  CompensatedSum sum;
  for (long j = -params.m(); j <= params.n(); ++j) {
    const RawNode r = raw_node(map, kind, omega, tau, h, j);
    if (std::abs(scale * r.scaled_weight) < kWeightFloor) continue;
    sum.add(r.scaled_weight * checked_eval(f, r.x));
  }
  return scale * sum.value();
}

std::complex<double> fourier_transform(const Integrand& f, double omega, const DEMap& map,
                                       const QuadratureParams& params_cosine,
                                       const QuadratureParams& params_sine) {
  return {transform(f, TransformKind::Cosine, omega, map, params_cosine),
          transform(f, TransformKind::Sine, omega, map, params_sine)};
}

}  // namespace defourier
