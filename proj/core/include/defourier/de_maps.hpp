#pragma once

#include <complex>

namespace defourier {

enum class MapKind { Phi1, Phi2 };

/// One of the two double-exponential maps of the half line onto the real line:
///
///   phi1(xi) = xi / (1 - exp(-2 pi sinh xi))
///   phi2(xi) = xi / (1 - exp(-2 xi - alpha (1 - e^-xi) - beta (e^xi - 1)))
///
/// Both tend to 0 double exponentially as xi -> -inf and to xi as xi -> +inf.
class DEMap {
 public:
  static DEMap phi1() { return DEMap(MapKind::Phi1, 0.0, 0.0); }
  /// Throws DomainError unless 0 < alpha < beta < 1.
  static DEMap phi2(double alpha, double beta);

  MapKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const DEMap&, const DEMap&) = default;

 private:
  DEMap(MapKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

  MapKind kind_;
  double alpha_;
  double beta_;
};

struct AlphaBeta {
  double alpha;
  double beta;
};

/// beta = 1/4, alpha = beta / sqrt(1 + tau/(4 pi) log(1 + tau)).
AlphaBeta default_alpha_beta(double tau);

// Map values and first derivatives. The removable singularity at xi = 0 is
// handled by series, so phi(Phi1, 0) = 1/(2 pi) and phi_prime(Phi1, 0) = 1/2.
// The complex overloads throw PoleError when xi is (numerically) a pole of the
// map, and return exactly the real result when Im(xi) == 0.
double phi(const DEMap& map, double xi);
std::complex<double> phi(const DEMap& map, std::complex<double> xi);
double phi_prime(const DEMap& map, double xi);
std::complex<double> phi_prime(const DEMap& map, std::complex<double> xi);

/// phi(xi) - xi without cancellation for xi >= 0.
double phi_excess(const DEMap& map, double xi);

}  // namespace defourier
