#pragma once

#include <compare>
#include <complex>

namespace defourier::specfun {

/// Label of a Lambert W branch (W_n). Any integer is valid.
struct BranchIndex {
  long n = 0;

  constexpr BranchIndex() = default;
  constexpr explicit BranchIndex(long value) : n(value) {}

  friend constexpr auto operator<=>(const BranchIndex&, const BranchIndex&) = default;
  friend constexpr BranchIndex operator+(BranchIndex b, long k) { return BranchIndex{b.n + k}; }
  friend constexpr BranchIndex operator-(BranchIndex b, long k) { return BranchIndex{b.n - k}; }
};

/// Principal real branch W_0 on [-1/e, inf). Inputs up to 1e-14 below -1/e
/// are treated as the branch point; anything further below throws DomainError.
double lambert_w0(double x);

/// Lower real branch W_{-1} on [-1/e, 0). Throws DomainError outside.
double lambert_wm1(double x);

/// Complex Lambert W on branch n, using the usual branch cuts
/// ((-inf, -1/e] for n = 0, (-inf, 0] otherwise) with values on a cut taken
/// from the upper side. z = 0 is only valid on branch 0.
///
/// Throws DomainError for z = 0 with n != 0 and NonConvergenceError if the
/// Halley iteration cannot meet |w e^w - z| <= 1e-12 max(1, |z|).
std::complex<double> lambert_w(BranchIndex n, std::complex<double> z);

/// Index n of the region W_n = { q : W_n(q e^q) = q } containing q.
///
/// Candidates round(Im q / 2pi) + {-1, 0, 1} are tried first, then the window
/// widens by one on each side. Throws BranchAmbiguityError if no candidate,
/// or more than one, reproduces q to 1e-9 max(1, |q|).
BranchIndex branch_of(std::complex<double> q);

}  // namespace defourier::specfun
