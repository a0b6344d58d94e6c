#include "defourier/auto_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "defourier/errors.hpp"

namespace defourier {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitRoundoff = 0x1p-52;

}  // namespace

void AutoConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("AutoConfig: eta must lie in (0, 1)");
  if (n1 < 4) throw DomainError("AutoConfig: n1 must be >= 4");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw DomainError("AutoConfig: gamma must be > 1");
  if (n_max < 1) throw DomainError("AutoConfig: n_max must be >= 1");
}

double truncation_length(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("truncation_length: eta must lie in (0, 1)");
  return std::asinh(-std::log(eta / 3.0) / kTwoPi);
}

AutoResult auto_transform(const Integrand& f, TransformKind kind, double omega,
                          const AutoConfig& config) {
  config.validate();
  const DEMap map = DEMap::phi1();

  AutoResult r;
  r.ell = truncation_length(config.eta);

  const long n1 = config.n1;
  const long n2 = 2 * n1;
  const double h1 = config.gamma * r.ell / static_cast<double>(n1);
  const double h2 = 0.5 * h1;
  const double coarse = transform(f, kind, omega, map, QuadratureParams(h1, n1, n1));
  const double fine = transform(f, kind, omega, map, QuadratureParams(h2, n2, n2));
  r.diagnostics.evaluations = (2 * n1 + 1) + (2 * n2 + 1);

  r.delta = std::abs(coarse - fine);
  if (!std::isnormal(r.delta)) {
    r.delta = std::max(std::abs(fine), 1.0) * kUnitRoundoff;
    r.diagnostics.delta_clamped = true;
  }
  r.d = -h1 / kTwoPi * std::log(r.delta);

  const double n_real = r.ell * std::exp(r.ell) / (2.0 * r.d);
  if (!(r.d > 0.0) || !(n_real <= static_cast<double>(config.n_max))) {
    r.converged = false;
    r.n = config.n_max;
    r.h = r.ell / static_cast<double>(r.n);
    r.value = fine;
    return r;
  }

  r.n = std::max(1L, static_cast<long>(std::ceil(n_real)));
  r.h = r.ell / static_cast<double>(r.n);
  r.value = transform(f, kind, omega, map, QuadratureParams(r.h, r.n, r.n));
  r.diagnostics.evaluations += 2 * r.n + 1;
  return r;
}

std::vector<SweepPoint> auto_sweep(const Integrand& f, TransformKind kind,
                                   std::span<const double> omegas, const AutoConfig& config) {
  if (omegas.empty()) throw DomainError("auto_sweep: empty frequency list");
  if (!std::is_sorted(omegas.begin(), omegas.end())) {
    throw DomainError("auto_sweep: frequencies must be ascending");
  }
  const AutoResult base = auto_transform(f, kind, omegas.front(), config);
  if (!base.converged) {
    throw NonConvergenceError("auto_sweep: parameter selection exceeded n_max", base.delta);
  }
  const QuadratureParams params(base.h, base.n, base.n);
  const DEMap map = DEMap::phi1();

  std::vector<SweepPoint> out;
  out.reserve(omegas.size());
  out.push_back({omegas.front(), base.value});
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    out.push_back({omegas[i], transform(f, kind, omegas[i], map, params)});
  }
  return out;
}

}  // namespace defourier
