#include "defourier/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "defourier/errors.hpp"

namespace defourier::specfun {
namespace {

using cplx = std::complex<double>;

constexpr double kInvE = 0.36787944117144233;
// e = kEHi + kELo to ~32 digits; used to form e*x + 1 without cancellation.
constexpr double kEHi = 2.718281828459045;
constexpr double kELo = 1.4456468917292502e-16;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this distance from -1/e the branch-point series is returned directly.
constexpr double kBranchSeriesRadius = 1e-4;
// Below this distance the series is still the best Halley seed.
constexpr double kBranchSeedRadius = 0.3;

constexpr int kMaxHalley = 100;

// Coefficients of W(p) = -1 + p - p^2/3 + 11 p^3/72 - ... with
// p = +-sqrt(2 (e z + 1)).
constexpr std::array<double, 10> kBranchCoeffs = {
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
};

template <typename T>
T branch_series(T p) {
  T acc = kBranchCoeffs.back();
  for (auto it = kBranchCoeffs.rbegin() + 1; it != kBranchCoeffs.rend(); ++it) {
    acc = acc * p + *it;
  }
  return acc;
}

double branch_offset(double x) { return std::fma(kEHi, x, 1.0) + kELo * x; }

cplx branch_offset(cplx z) {
  return {branch_offset(z.real()), (kEHi + kELo) * z.imag()};
}

double halley_real(double x, double w) {
  for (int it = 0; it < kMaxHalley; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    if (!std::isfinite(dw)) break;
    w -= dw;
    if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

cplx halley_complex(cplx z, cplx w) {
  for (int it = 0; it < kMaxHalley; ++it) {
    const cplx ew = std::exp(w);
    const cplx f = w * ew - z;
    const cplx wp1 = w + 1.0;
    const cplx denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const cplx dw = f / denom;
    if (!std::isfinite(dw.real()) || !std::isfinite(dw.imag())) break;
    w -= dw;
    if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

cplx asymptotic_seed(cplx z, long n) {
  const cplx l1 = std::log(z) + cplx(0.0, kTwoPi * static_cast<double>(n));
  return l1 - std::log(l1);
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) return x;
  if (x < -kInvE - 1e-14) {
    throw DomainError("lambert_w0: argument " + std::to_string(x) + " below -1/e");
  }
  if (x == 0.0 || std::isinf(x)) return x;

  const double t = branch_offset(x);
  if (t <= 0.0) return -1.0;
  if (t < kEHi * kBranchSeriesRadius) return branch_series(std::sqrt(2.0 * t));

  double w;
  if (t < kEHi * kBranchSeedRadius) {
    w = branch_series(std::sqrt(2.0 * t));
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley_real(x, w);
}

double lambert_wm1(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.0 || x < -kInvE - 1e-14) {
    throw DomainError("lambert_wm1: argument " + std::to_string(x) + " outside [-1/e, 0)");
  }
  const double t = branch_offset(x);
  if (t <= 0.0) return -1.0;
  if (t < kEHi * kBranchSeriesRadius) return branch_series(-std::sqrt(2.0 * t));

  double w;
  if (t < kEHi * kBranchSeedRadius) {
    w = branch_series(-std::sqrt(2.0 * t));
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley_real(x, w);
}

std::complex<double> lambert_w(BranchIndex branch, std::complex<double> z) {
  const long n = branch.n;
  if (std::isnan(z.real()) || std::isnan(z.imag())) return z;
  // Points on a cut take the value from the upper side.
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);

  if (z == cplx(0.0, 0.0)) {
    if (n == 0) return z;
    throw DomainError("lambert_w: z = 0 is singular on branch " + std::to_string(n));
  }

  if (z.imag() == 0.0 && z.real() >= -kInvE) {
    const double x = z.real();
    if (n == 0) return {lambert_w0(x), 0.0};
    if (n == -1 && x < 0.0) return {lambert_wm1(x), 0.0};
  }

  // Branches that touch -1/e from the side z sits on: W_0 from both sides,
  // W_{-1} from above, W_1 from below.
  const bool touches_branch_point =
      n == 0 || (n == -1 && z.imag() >= 0.0) || (n == 1 && z.imag() < 0.0);
  const cplx t = branch_offset(z);

  cplx w;
  if (touches_branch_point && std::abs(t) < kEHi * kBranchSeedRadius) {
    cplx p = std::sqrt(2.0 * t);
    if (n != 0) p = -p;
    w = branch_series(p);
    if (std::abs(t) < kEHi * kBranchSeriesRadius) return w;
  } else if (n == 0 && z.real() > -1.0 && z.real() < 1.5 && std::abs(z.imag()) < 1.0 &&
             z.real() > -2.5 * std::abs(z.imag()) - 0.2) {
    w = std::log(1.0 + z);
  } else {
    w = asymptotic_seed(z, n);
  }

  w = halley_complex(z, w);

  const double residual = std::abs(w * std::exp(w) - z);
  if (!(residual <= 1e-12 * std::max(1.0, std::abs(z)))) {
    throw NonConvergenceError("lambert_w: Halley iteration did not converge on branch " +
                                  std::to_string(n),
                              residual);
  }
  return w;
}

BranchIndex branch_of(std::complex<double> q) {
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
    throw DomainError("branch_of: non-finite argument");
  }
  const cplx z = q * std::exp(q);
  if (z == cplx(0.0, 0.0) || !std::isfinite(std::abs(z))) {
    throw BranchAmbiguityError("branch_of: q e^q is not representable");
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(q));
  const auto reproduces = [&](long n) {
    try {
      return std::abs(lambert_w(BranchIndex{n}, z) - q) <= tol;
    } catch (const NonConvergenceError&) {
      return false;
    } catch (const DomainError&) {
      return false;
    }
  };

  const long centre = std::lround(q.imag() / kTwoPi);
  std::vector<long> hits;
  for (long n = centre - 1; n <= centre + 1; ++n) {
    if (reproduces(n)) hits.push_back(n);
  }
  if (hits.empty()) {
    for (long n : {centre - 2, centre + 2}) {
      if (reproduces(n)) hits.push_back(n);
    }
  }
  if (hits.size() == 1) return BranchIndex{hits.front()};
  throw BranchAmbiguityError(hits.empty()
                                 ? "branch_of: no branch reproduces q"
                                 : "branch_of: q lies on a branch boundary");
}

}  // namespace defourier::specfun
