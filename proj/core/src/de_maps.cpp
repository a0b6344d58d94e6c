#include "defourier/de_maps.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "defourier/errors.hpp"

namespace defourier {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Past this exponent e^-v underflows and phi(xi) == xi in double precision.
constexpr double kExponentLimit = 745.0;
constexpr double kSeriesRadius = 0.5;
constexpr double kBernoulliRadius = 0.25;

template <typename T>
double magnitude(const T& x) {
  return std::abs(x);
}

template <typename T>
double real_part(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) {
    return x.real();
  } else {
    return x;
  }
}

double expm1_(double x) { return std::expm1(x); }

// exp(z) - 1 with full relative accuracy for small |z|.
cplx expm1_(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

// (e^x - 1) / x
template <typename T>
T exprel(T x) {
  if (magnitude(x) < kSeriesRadius) {
    T acc = 1.0 / 20922789888000.0;  // 1/16!
    double fact = 20922789888000.0;
    for (int k = 15; k >= 1; --k) {
      fact /= (k + 1);
      acc = acc * x + 1.0 / fact;
    }
    return acc;
  }
  return expm1_(x) / x;
}

// d/dx (e^x - 1) / x
template <typename T>
T exprel_prime(T x) {
  if (magnitude(x) < kSeriesRadius) {
    // sum_{k>=1} k x^{k-1} / (k+1)!
    T acc = 0.0;
    double fact = 2.0;
    T power = 1.0;
    for (int k = 1; k <= 17; ++k) {
      acc += static_cast<double>(k) * power / fact;
      power *= x;
      fact *= (k + 2);
    }
    return acc;
  }
  return ((x - 1.0) * std::exp(x) + 1.0) / (x * x);
}

// sinh(x) / x
template <typename T>
T sinhc(T x) {
  if (magnitude(x) < kSeriesRadius) {
    const T x2 = x * x;
    T acc = 0.0;
    double fact = 1.0;
    T power = 1.0;
    for (int k = 0; k <= 8; ++k) {
      acc += power / fact;
      power *= x2;
      fact *= (2 * k + 2) * (2 * k + 3);
    }
    return acc;
  }
  return std::sinh(x) / x;
}

// d/dx sinh(x) / x
template <typename T>
T sinhc_prime(T x) {
  if (magnitude(x) < kSeriesRadius) {
    // sum_{k>=1} 2k x^{2k-1} / (2k+1)!
    const T x2 = x * x;
    T acc = 0.0;
    double fact = 6.0;
    T power = x;
    for (int k = 1; k <= 8; ++k) {
      acc += static_cast<double>(2 * k) * power / fact;
      power *= x2;
      fact *= (2 * k + 2) * (2 * k + 3);
    }
    return acc;
  }
  return (x * std::cosh(x) - std::sinh(x)) / (x * x);
}

// G(v) = v / (1 - e^-v) and G'(v) near v = 0 (Bernoulli series).
constexpr std::array<double, 7> kBernoulliTerms = {
    // B_{2k} / (2k)!, k = 1..7
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
};

template <typename T>
T bernoulli_g(T v) {
  const T v2 = v * v;
  T acc = 0.0;
  for (auto it = kBernoulliTerms.rbegin(); it != kBernoulliTerms.rend(); ++it) {
    acc = (acc + *it) * v2;
  }
  return 1.0 + 0.5 * v + acc;
}

template <typename T>
T bernoulli_g_prime(T v) {
  const T v2 = v * v;
  T acc = 0.0;
  for (int k = static_cast<int>(kBernoulliTerms.size()); k >= 1; --k) {
    acc = acc * v2 + static_cast<double>(2 * k) * kBernoulliTerms[k - 1];
  }
  return 0.5 + acc * v;
}

// Exponent v(xi) of the map written as v = xi * s(xi), with derivatives.
template <typename T>
struct Exponent {
  T v;
  T dv;
  T s;
  T ds;
};

template <typename T>
Exponent<T> exponent(const DEMap& map, T xi) {
  if (map.kind() == MapKind::Phi1) {
    const T s = kTwoPi * sinhc(xi);
    return {xi * s, kTwoPi * std::cosh(xi), s, kTwoPi * sinhc_prime(xi)};
  }
  const double a = map.alpha();
  const double b = map.beta();
  const T s = 2.0 + a * exprel(-xi) + b * exprel(xi);
  const T dv = 2.0 + a * std::exp(-xi) + b * std::exp(xi);
  const T ds = -a * exprel_prime(-xi) + b * exprel_prime(xi);
  return {xi * s, dv, s, ds};
}

template <typename T>
[[noreturn]] void throw_pole(T xi) {
  if constexpr (std::is_same_v<T, cplx>) {
    throw PoleError("DE map pole at xi = (" + std::to_string(xi.real()) + ", " +
                    std::to_string(xi.imag()) + ")");
  } else {
    throw PoleError("DE map pole at xi = " + std::to_string(xi));
  }
}

template <typename T>
struct Value {
  T phi;
  T dphi;
};

template <typename T>
Value<T> evaluate(const DEMap& map, T xi) {
  const Exponent<T> e = exponent(map, xi);
  const double re_v = real_part(e.v);

  if (!(re_v <= kExponentLimit)) return {xi, T(1.0)};
  if (!(re_v >= -kExponentLimit)) return {T(0.0), T(0.0)};

  if (magnitude(e.v) < kBernoulliRadius) {
    if (magnitude(e.s) < 1e-300) throw_pole(xi);
    const T g = bernoulli_g(e.v);
    const T gp = bernoulli_g_prime(e.v);
    return {g / e.s, gp * e.dv / e.s - g * e.ds / (e.s * e.s)};
  }

  if (re_v >= 0.0) {
    const T denom = -expm1_(-e.v);  // 1 - e^-v
    if (magnitude(denom) < 1e-300) throw_pole(xi);
    const T em = std::exp(-e.v);
    return {xi / denom, 1.0 / denom - xi * e.dv * em / (denom * denom)};
  }
  const T denom = -expm1_(e.v);  // 1 - e^v
  if (magnitude(denom) < 1e-300) throw_pole(xi);
  const T ep = std::exp(e.v);
  return {-xi * ep / denom, -ep / denom - xi * e.dv * ep / (denom * denom)};
}

}  // namespace

DEMap DEMap::phi2(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < beta && beta < 1.0)) {
    throw DomainError("DEMap::phi2 requires 0 < alpha < beta < 1 (alpha = " +
                      std::to_string(alpha) + ", beta = " + std::to_string(beta) + ")");
  }
  return DEMap(MapKind::Phi2, alpha, beta);
}

AlphaBeta default_alpha_beta(double tau) {
  if (!(tau > 0.0)) throw DomainError("default_alpha_beta: tau must be positive");
  constexpr double beta = 0.25;
  const double alpha = beta / std::sqrt(1.0 + tau / (2.0 * kTwoPi) * std::log1p(tau));
  return {alpha, beta};
}

double phi(const DEMap& map, double xi) { return evaluate(map, xi).phi; }

std::complex<double> phi(const DEMap& map, std::complex<double> xi) {
  if (xi.imag() == 0.0) return {phi(map, xi.real()), 0.0};
  return evaluate(map, xi).phi;
}

double phi_prime(const DEMap& map, double xi) { return evaluate(map, xi).dphi; }

std::complex<double> phi_prime(const DEMap& map, std::complex<double> xi) {
  if (xi.imag() == 0.0) return {phi_prime(map, xi.real()), 0.0};
  return evaluate(map, xi).dphi;
}

double phi_excess(const DEMap& map, double xi) {
  if (xi <= 0.0) return phi(map, xi) - xi;
  const Exponent<double> e = exponent(map, xi);
  if (e.v < kBernoulliRadius) return phi(map, xi) - xi;
  if (e.v > kExponentLimit) return 0.0;
  // xi e^-v / (1 - e^-v) = xi / (e^v - 1)
  return xi / std::expm1(e.v);
}

}  // namespace defourier
