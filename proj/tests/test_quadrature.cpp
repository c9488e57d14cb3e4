#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "nonsym/profiles.hpp"
#include "nonsym/quadrature.hpp"

using namespace nonsym;

namespace {

const QuadConfig kCfg;  // defaults: rel 1e-9, abs 1e-12

Profile parabola() {
  Profile p;
  p.f = [](double x) { return x * x; };
  p.df = [](double x) { return 2.0 * x; };
  p.support_radius = 1e300;
  return p;
}

}  // namespace

TEST_CASE("polynomial exactness of the embedded rules") {
  // Degree 13 is exact for both the Gauss and the Kronrod rule, so the
  // error estimate is at rounding level and no refinement happens.
  auto f13 = [](double t) { return std::pow(t, 13); };
  QuadResult r = integrate(f13, 0.0, 1.0, kCfg);
  CHECK_EQ(r.panels, 1);
  CHECK(std::abs(r.value - 1.0 / 14.0) < 1e-15);
  CHECK(r.error < 1e-14);

  // Degree 22 is exact for the Kronrod rule alone. Cap the budget at the
  // initial panel so the raw 15-point value is visible.
  QuadConfig one;
  one.max_panels = 1;
  auto f22 = [](double t) { return std::pow(t, 22); };
  QuadResult r22 = integrate(f22, 0.0, 1.0, one);
  CHECK_EQ(r22.panels, 1);
  CHECK(std::abs(r22.value - 1.0 / 23.0) < 5e-15);
}

TEST_CASE("smooth integrals converge to the requested tolerance") {
  QuadResult r = integrate([](double t) { return t; }, 0.0, 1.0, kCfg);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));

  QuadResult rc = integrate([](double t) { return std::cos(t); }, 0.0, 10.0,
                            kCfg);
  CHECK(std::abs(rc.value - std::sin(10.0)) <= rc.error + 1e-12);
  CHECK(std::abs(rc.value - std::sin(10.0)) < 1e-9);
}

TEST_CASE("endpoint singularity t^(-1/2) is handled adaptively") {
  QuadResult r =
      integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, kCfg);
  CHECK(std::abs(r.value - 2.0) < 1e-7);
  CHECK(std::abs(r.value - 2.0) <= r.error + 1e-9);
  CHECK(r.panels > 10);
}

TEST_CASE("split points isolate formula changes") {
  // |t| with a split at the corner: each half is linear, so two panels
  // suffice and the result is exact to rounding.
  auto f = [](double t) { return std::abs(t); };
  QuadResult with = integrate(f, -1.0, 1.0, kCfg, {0.0});
  CHECK_EQ(with.panels, 2);
  CHECK(std::abs(with.value - 1.0) < 1e-15);

  QuadResult without = integrate(f, -1.0, 1.0, kCfg);
  CHECK(without.panels > 2);
  CHECK(std::abs(without.value - 1.0) < 1e-9);

  // Odd step integrates to zero when the jump is a panel boundary.
  auto sgn = [](double t) { return t < 0.0 ? -1.0 : 1.0; };
  QuadResult z = integrate(sgn, -1.0, 1.0, kCfg, {0.0});
  CHECK(std::abs(z.value) < 1e-14);

  // Splits outside (a, b) and duplicates are ignored.
  QuadResult dup = integrate(f, -1.0, 1.0, kCfg, {-5.0, 0.0, 0.0, 7.0});
  CHECK_EQ(dup.panels, 2);
}

TEST_CASE("degenerate and invalid ranges") {
  QuadResult r = integrate([](double) { return 1.0; }, 2.0, 2.0, kCfg);
  CHECK_EQ(r.value, 0.0);
  CHECK_EQ(r.panels, 0);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, kCfg),
                  std::invalid_argument);
}

TEST_CASE("integration is deterministic") {
  auto f = [](double t) { return std::sin(3.0 * t) / std::sqrt(t); };
  QuadResult r1 = integrate(f, 0.0, 2.0, kCfg);
  QuadResult r2 = integrate(f, 0.0, 2.0, kCfg);
  CHECK_EQ(r1.value, r2.value);
  CHECK_EQ(r1.error, r2.error);
  CHECK_EQ(r1.panels, r2.panels);
}

TEST_CASE("power tail closed form") {
  CHECK_EQ(integrate_power_tail(2.0, 0.5, 1.0), 4.0);
  CHECK(integrate_power_tail(1.5, 0.25, 16.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(integrate_power_tail(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_power_tail(1.0, 0.5, 0.0), std::invalid_argument);

  // Consistency with the adaptive rule on a long finite stretch.
  const double alpha = 0.7;
  QuadResult mid = integrate(
      [alpha](double t) { return 3.0 * std::pow(t, -1.0 - alpha); }, 1.0, 1e6,
      kCfg);
  const double full = integrate_power_tail(3.0, alpha, 1.0);
  const double rest = integrate_power_tail(3.0, alpha, 1e6);
  CHECK(mid.value + rest == doctest::Approx(full).epsilon(1e-8));
}

TEST_CASE("symmetrized core reproduces a quadratic exactly") {
  // For phi(t) = t^2 the second difference is 2 t^2 and the core over
  // [0, 1] with alpha = 1/2 is 2 / (2 - 1/2) = 4/3.
  QuadResult r = symmetrized_core(parabola(), 0.0, 1.0, 0.5, kCfg);
  CHECK(r.value == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
  CHECK(std::abs(r.value - 4.0 / 3.0) <= r.error + 1e-14);

  // Same quadratic centered elsewhere: D(t) is unchanged.
  QuadResult r2 = symmetrized_core(parabola(), 3.0, 1.0, 0.5, kCfg);
  CHECK(r2.value == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("symmetrized core vanishes exactly under odd symmetry") {
  Profile v = holder_wedge(0.5, 0.25);
  QuadResult r = symmetrized_core(v, 0.0, 1e-3, 0.5, kCfg);
  CHECK_EQ(r.value, 0.0);

  Profile u = smooth_step(1.0);
  QuadResult ru = symmetrized_core(u, 0.0, 1e-3, 0.5, kCfg);
  CHECK_EQ(ru.value, 0.0);
}

TEST_CASE("symmetrized core is negligible on a linear piece") {
  Profile w = clamped_ramp(4.0, 2.5);
  QuadResult r = symmetrized_core(w, 0.5, 1e-3, 0.5, kCfg);
  CHECK(std::abs(r.value) < 1e-12);
  CHECK_THROWS_AS(symmetrized_core(w, 0.5, 0.0, 0.5, kCfg),
                  std::invalid_argument);
}

TEST_CASE("local smoothness scale") {
  Profile v = holder_wedge(0.5, 0.25);  // breakpoints -2, 0, 2
  CHECK_EQ(local_scale(v, 0.5), 0.5);
  CHECK_EQ(local_scale(v, -0.25), 0.25);
  CHECK_EQ(local_scale(v, 2.0), 1.0);   // nearest other breakpoint is 2 away
  CHECK_EQ(local_scale(v, 1e-12), 1e-8);  // floor
  CHECK_EQ(local_scale(v, 1e-12, 1e-10), 1e-10);

  Profile u = smooth_step(0.25);
  CHECK_EQ(local_scale(u, 0.25), 0.5);

  Profile flat;
  flat.f = [](double) { return 1.0; };
  flat.df = [](double) { return 0.0; };
  CHECK_EQ(local_scale(flat, 123.0), 1.0);
}