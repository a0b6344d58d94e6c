#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "defourier/de_maps.hpp"

namespace defourier {

/// A simple pole z0 of f (Im z0 != 0) with residue Res(f, z0). The conjugate
/// pole is implied.
struct Pole {
  std::complex<double> z0;
  std::complex<double> residue;
};

/// Real integrand on (0, inf) with optional analytic metadata.
struct Integrand {
  std::function<double(double)> eval;
  /// C with |f(x)| <= C on [0, inf), when known.
  std::optional<double> bound;
  /// Poles ordered by |Im z0| ascending; empty when unknown.
  std::vector<Pole> poles;

  double operator()(double x) const { return eval(x); }
};

/// Throws DomainError if the pole list is malformed (a real pole, or not
/// sorted by |Im z0|).
void validate(const Integrand& f);

enum class TransformKind { Cosine, Sine };

/// Mesh size and truncation indices of the rule j = -M..N. tau = pi / h is
/// always derived, never supplied.
class QuadratureParams {
 public:
  /// Throws DomainError unless h > 0 and M, N >= 0.
  QuadratureParams(double h, long m, long n);

  double h() const { return h_; }
  long m() const { return m_; }
  long n() const { return n_; }
  double tau() const;
  /// L = M + N + 1.
  long node_count() const { return m_ + n_ + 1; }

 private:
  double h_;
  long m_;
  long n_;
};

struct Node {
  double x;
  double weight;
};

/// Abscissae x_j = (tau/omega) phi(jh - shift) and weights
/// (tau/omega) h trig(tau phi(jh - shift)) phi'(jh - shift) for j = -M..N,
/// where shift = h/2 for the cosine rule and 0 for the sine rule.
std::vector<Node> nodes(const DEMap& map, TransformKind kind, double omega,
                        const QuadratureParams& params);

/// Truncated DE trapezoidal approximation of int_0^inf f(x) cos(omega x) dx
/// (or sin). Terms are accumulated in order j = -M..N with Kahan summation.
/// Nodes whose weight underflows are skipped without calling f. Integrand
/// failures are rethrown as IntegrandError carrying the node.
double transform(const Integrand& f, TransformKind kind, double omega, const DEMap& map,
                 const QuadratureParams& params);

/// F(omega) = F^c(omega) + i F^s(omega), each part with its own parameters.
std::complex<double> fourier_transform(const Integrand& f, double omega, const DEMap& map,
                                       const QuadratureParams& params_cosine,
                                       const QuadratureParams& params_sine);

}  // namespace defourier
