#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "defourier/auto_integrator.hpp"
#include "defourier/errors.hpp"
#include "defourier/testbed.hpp"

using namespace defourier;
constexpr double kPi = std::numbers::pi;

TEST_CASE("truncation length") {
  // mpmath: asinh(ln(3e7) / (2 pi)) = 1.7328972278795346
  CHECK(truncation_length(1e-7) == doctest::Approx(1.7328972278795346).epsilon(1e-14));
  for (double eta : {1e-4, 1e-7, 1e-10, 1e-13}) {
    const double ell = truncation_length(eta);
    CHECK(std::exp(-2.0 * kPi * std::sinh(ell)) == doctest::Approx(eta / 3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(truncation_length(0.0), DomainError);
  CHECK_THROWS_AS(truncation_length(1.0), DomainError);
}

TEST_CASE("AutoConfig validation") {
  CHECK_NOTHROW(AutoConfig{}.validate());
  CHECK_THROWS_AS((AutoConfig{0.0}).validate(), DomainError);
  CHECK_THROWS_AS((AutoConfig{1.5}).validate(), DomainError);
  CHECK_THROWS_AS((AutoConfig{1e-7, 3}).validate(), DomainError);
  CHECK_THROWS_AS((AutoConfig{1e-7, 10, 1.0}).validate(), DomainError);
}

TEST_CASE("f1 cosine, omega 1, eta 1e-7") {
  const auto f = testbed::f1();
  const AutoResult r = auto_transform(f.integrand, TransformKind::Cosine, 1.0, AutoConfig{1e-7, 10});
  CHECK(r.converged);
  CHECK(r.n == 18);
  CHECK(r.h == doctest::Approx(9.63e-2).epsilon(5e-3));
  CHECK(std::abs(r.value - 0.5778636748954609) <= 5e-6);
  CHECK(r.n * r.h == doctest::Approx(r.ell).epsilon(1e-15));
  CHECK(r.delta > 0.0);
  CHECK(r.diagnostics.evaluations == (2 * 10 + 1) + (4 * 10 + 1) + (2 * r.n + 1));
  CHECK_FALSE(r.diagnostics.delta_clamped);
}

TEST_CASE("invsqrt sine, omega 10, eta 1e-13") {
  const auto f = testbed::inv_sqrt();
  const AutoResult r = auto_transform(f.integrand, TransformKind::Sine, 10.0, AutoConfig{1e-13, 10});
  CHECK(r.converged);
  CHECK(std::abs(r.value - std::sqrt(kPi / 20.0)) <= 1e-11);
}

TEST_CASE("N grows as eta shrinks") {
  const auto f = testbed::f1();
  const AutoResult coarse =
      auto_transform(f.integrand, TransformKind::Cosine, 1.0, AutoConfig{1e-7, 10});
  const AutoResult fine =
      auto_transform(f.integrand, TransformKind::Cosine, 1.0, AutoConfig{1e-13, 10});
  CHECK(fine.n > coarse.n);
}

TEST_CASE("determinism") {
  const auto f = testbed::f2();
  const AutoResult a = auto_transform(f.integrand, TransformKind::Sine, 5.0, AutoConfig{1e-10, 20});
  const AutoResult b = auto_transform(f.integrand, TransformKind::Sine, 5.0, AutoConfig{1e-10, 20});
  CHECK(a.value == b.value);
  CHECK(a.delta == b.delta);
  CHECK(a.n == b.n);
  CHECK(a.h == b.h);
}

TEST_CASE("zero pilot difference is clamped") {
  Integrand zero;
  zero.eval = [](double) { return 0.0; };
  const AutoResult r = auto_transform(zero, TransformKind::Cosine, 1.0, AutoConfig{});
  CHECK(r.diagnostics.delta_clamped);
  CHECK(r.delta > 0.0);
  CHECK(std::isfinite(r.d));
  CHECK(r.value == 0.0);
  CHECK(r.converged);
}

TEST_CASE("N cap reports non-convergence") {
  const auto f = testbed::f1();
  AutoConfig cfg{1e-13, 10};
  cfg.n_max = 5;
  const AutoResult r = auto_transform(f.integrand, TransformKind::Cosine, 1.0, cfg);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("auto_sweep") {
  const auto f = testbed::f1();
  const AutoConfig cfg{1e-5, 20};
  const std::vector<double> single = {2.0};
  const auto one = auto_sweep(f.integrand, TransformKind::Cosine, single, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == auto_transform(f.integrand, TransformKind::Cosine, 2.0, cfg).value);

  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(1.0 + i);
  const auto points = auto_sweep(f.integrand, TransformKind::Cosine, grid, cfg);
  REQUIRE(points.size() == grid.size());
  for (const auto& p : points) {
    CHECK(std::abs(p.value - (*f.analytic_cosine)(p.omega)) <= 1e-4);
  }

  const auto g = testbed::f2();
  const auto sine = auto_sweep(g.integrand, TransformKind::Sine, grid, cfg);
  for (const auto& p : sine) {
    CHECK(std::abs(p.value - (*g.analytic_sine)(p.omega)) <= 1e-4);
  }

  const std::vector<double> empty;
  CHECK_THROWS_AS(auto_sweep(f.integrand, TransformKind::Cosine, empty, cfg), DomainError);
  const std::vector<double> descending = {2.0, 1.0};
  CHECK_THROWS_AS(auto_sweep(f.integrand, TransformKind::Cosine, descending, cfg), DomainError);
}
