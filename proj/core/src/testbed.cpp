#include "defourier/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "defourier/de_maps.hpp"
#include "defourier/error_model.hpp"
#include "defourier/errors.hpp"

namespace defourier::testbed {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

constexpr long kOracleN = 500;
constexpr long kOracleCheckN = 800;
constexpr double kOracleTolerance = 1e-12;

struct OracleRun {
  double value;
  // Sum of |w_j f(x_j)|: the scale that rounding errors in the sum follow.
  double mass;
};

OracleRun oracle_run(const Integrand& f, TransformKind kind, double omega, double theta, long n) {
  const double h = select_h_phi2(n, theta, 0.25);
  const AlphaBeta ab = default_alpha_beta(kPi / h);
  const long m = select_m_phi2(n, h, ab.alpha, ab.beta);
  const DEMap map = DEMap::phi2(ab.alpha, ab.beta);
  const QuadratureParams params(h, m, n);
  double mass = 0.0;
  for (const Node& node : nodes(map, kind, omega, params)) {
    if (std::abs(node.weight) >= 1e-320) mass += std::abs(node.weight * f(node.x));
  }
  return {transform(f, kind, omega, map, params), mass};
}

}  // namespace

NamedIntegrand f1() {
  NamedIntegrand f;
  f.name = "f1";
  f.formula = "1/(1+x^2)";
  f.integrand.eval = [](double x) { return 1.0 / (1.0 + x * x); };
  f.integrand.bound = 1.0;
  f.integrand.poles = {{cplx(0.0, 1.0), cplx(0.0, -0.5)}};
  f.analytic_cosine = [](double w) { return 0.5 * kPi * std::exp(-w); };
  return f;
}

NamedIntegrand f2() {
  NamedIntegrand f;
  f.name = "f2";
  f.formula = "x/(1+x^4)";
  f.integrand.eval = [](double x) {
    const double x2 = x * x;
    return x / (1.0 + x2 * x2);
  };
  // Maximum at x = 3^(-1/4).
  f.integrand.bound = std::pow(3.0, 0.75) / 4.0;
  // Res(x/(1+x^4), z) = 1/(4 z^2).
  const cplx z1 = std::polar(1.0, 0.25 * kPi);
  const cplx z3 = std::polar(1.0, 0.75 * kPi);
  f.integrand.poles = {{z1, 0.25 / (z1 * z1)}, {z3, 0.25 / (z3 * z3)}};
  f.analytic_sine = [](double w) {
    const double a = w / std::numbers::sqrt2;
    return 0.5 * kPi * std::exp(-a) * std::sin(a);
  };
  return f;
}

NamedIntegrand f3(double delta) {
  if (!(delta > 0.0)) throw DomainError("f3: delta must be positive");
  NamedIntegrand f;
  f.name = "f3";
  f.formula = "1/(1+exp(delta*x))";
  f.integrand.eval = [delta](double x) { return 1.0 / (1.0 + std::exp(delta * x)); };
  f.integrand.bound = 0.5;
  // Poles i (2k+1) pi / delta with residue -1/delta; the first three pairs.
  for (int k = 0; k < 3; ++k) {
    f.integrand.poles.push_back({cplx(0.0, (2 * k + 1) * kPi / delta), cplx(-1.0 / delta, 0.0)});
  }
  f.analytic_sine = [delta](double w) {
    return 0.5 / w - kPi / (2.0 * delta * std::sinh(kPi * w / delta));
  };
  return f;
}

NamedIntegrand f4() {
  NamedIntegrand f;
  f.name = "f4";
  f.formula = "1/((x-2)^2+1)";
  f.integrand.eval = [](double x) {
    const double u = x - 2.0;
    return 1.0 / (u * u + 1.0);
  };
  f.integrand.bound = 1.0;
  f.integrand.poles = {{cplx(2.0, 1.0), cplx(0.0, -0.5)}};
  return f;
}

NamedIntegrand inv_sqrt() {
  NamedIntegrand f;
  f.name = "invsqrt";
  f.formula = "x^(-1/2)";
  f.integrand.eval = [](double x) { return 1.0 / std::sqrt(x); };
  const auto fresnel = [](double w) { return std::sqrt(kPi / (2.0 * w)); };
  f.analytic_cosine = fresnel;
  f.analytic_sine = fresnel;
  return f;
}

std::vector<std::string> names() { return {"f1", "f2", "f3", "f4", "invsqrt"}; }

std::optional<NamedIntegrand> lookup(std::string_view name, double delta) {
  if (name == "f1") return f1();
  if (name == "f2") return f2();
  if (name == "f3") return f3(delta);
  if (name == "f4") return f4();
  if (name == "invsqrt") return inv_sqrt();
  return std::nullopt;
}

double reference_value(const NamedIntegrand& f, TransformKind kind, double omega) {
  if (!(omega > 0.0)) throw DomainError("reference_value: omega must be positive");
  const auto& analytic = kind == TransformKind::Cosine ? f.analytic_cosine : f.analytic_sine;
  if (analytic) return (*analytic)(omega);

  double theta = 0.5 * kPi;
  if (!f.integrand.poles.empty()) {
    theta = std::numeric_limits<double>::infinity();
    for (const Pole& p : f.integrand.poles) theta = std::min(theta, std::abs(std::arg(p.z0)));
  }
  const OracleRun coarse = oracle_run(f.integrand, kind, omega, theta, kOracleN);
  const OracleRun fine = oracle_run(f.integrand, kind, omega, theta, kOracleCheckN);
  const double a = coarse.value;
  const double b = fine.value;
  const double scale = std::max({std::abs(a), std::abs(b), fine.mass});
  if (!(std::abs(a - b) <= kOracleTolerance * scale)) {
    throw OracleDisagreementError("reference_value: oracle runs for " + f.name +
                                  " disagree (" + std::to_string(a) + " vs " +
                                  std::to_string(b) + ")");
  }
  return b;
}

std::complex<double> find_pole_numeric(std::complex<double> z0, double omega, double h,
                                       std::optional<std::complex<double>> guess) {
  const DEMap map = DEMap::phi1();
  const cplx target = z0 * omega * h / kPi;
  cplx t = guess ? *guess : pole_image_phi1(z0, omega, h).xi + 0.5 * h;

  for (int it = 0; it < 100; ++it) {
    const cplx xi = t - 0.5 * h;
    const cplx dt = (phi(map, xi) - target) / phi_prime(map, xi);
    t -= dt;
    if (std::abs(dt) <= 1e-15 * std::max(1.0, std::abs(t))) {
      const double residual = std::abs(phi(map, t - 0.5 * h) - target);
      if (residual > 1e-12) {
        throw NonConvergenceError("find_pole_numeric: residual above 1e-12", residual);
      }
      return t;
    }
  }
  throw NonConvergenceError("find_pole_numeric: no convergence in 100 Newton steps",
                            std::abs(phi(map, t - 0.5 * h) - target));
}

}  // namespace defourier::testbed
