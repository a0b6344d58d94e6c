#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defourier/quadrature.hpp"

namespace defourier::testbed {

using AnalyticTransform = std::function<double(double)>;

/// Benchmark integrand with pole metadata and closed-form transforms where
/// they are known.
struct NamedIntegrand {
  std::string name;
  std::string formula;
  Integrand integrand;
  std::optional<AnalyticTransform> analytic_cosine;
  std::optional<AnalyticTransform> analytic_sine;
};

NamedIntegrand f1();                    // 1 / (1 + x^2)
NamedIntegrand f2();                    // x / (1 + x^4)
NamedIntegrand f3(double delta = 1.5);  // 1 / (1 + e^(delta x))
NamedIntegrand f4();                    // 1 / ((x - 2)^2 + 1)
NamedIntegrand inv_sqrt();              // x^(-1/2)

/// Registry names: f1, f2, f3, f4, invsqrt.
std::vector<std::string> names();

/// Looks up a registry name; delta only applies to f3. Returns nullopt for
/// an unknown name.
std::optional<NamedIntegrand> lookup(std::string_view name, double delta = 1.5);

/// Closed-form transform when available; otherwise the phi2 rule at N = 500
/// cross-checked against N = 800. Throws OracleDisagreementError when the
/// two runs differ by more than 1e-12 relative to the larger of |F| and the
/// absolute mass sum |w_j f(x_j)| of the N = 800 rule.
double reference_value(const NamedIntegrand& f, TransformKind kind, double omega);

/// Pole of t -> f((tau/omega) phi1(t - h/2)), tau = pi/h, found by Newton's
/// method on phi1(t - h/2) = z0 omega h / pi. The default guess is the
/// pole image plus h/2. Throws NonConvergenceError after 100 iterations or
/// if the final residual exceeds 1e-12.
std::complex<double> find_pole_numeric(std::complex<double> z0, double omega, double h,
                                       std::optional<std::complex<double>> guess = {});

}  // namespace defourier::testbed
