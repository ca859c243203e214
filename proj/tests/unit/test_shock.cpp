#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nsk/errors.hpp"
#include "nsk/shock.hpp"

using namespace nsk;
using namespace nsk::testing;

TEST_CASE("numexample shock") {
  const FluidModel m = numexample_model();
  const ShockData sh = numexample_shock(m);
  CHECK(sh.speed == doctest::Approx(oracle::kSpeed).epsilon(1e-14));
  CHECK(std::abs(sh.speed - (-0.9912)) < 5e-4);
  CHECK(sh.speed * sh.speed == doctest::Approx(oracle::kSpeed2).epsilon(1e-14));
  CHECK(sh.amplitude == 0.5);
  CHECK(sh.lax_margin_lo > kLaxMarginFloor);
  CHECK(sh.lax_margin_hi > kLaxMarginFloor);
  CHECK(saddle_state(sh) == 1.0);
  CHECK(interior_state(sh) == 1.5);
}

TEST_CASE("profile forcing f") {
  const FluidModel m = numexample_model();
  const ShockData sh = numexample_shock(m);
  CHECK(std::abs(f_profile(sh, m, 1.0)) < 1e-14);
  CHECK(std::abs(f_profile(sh, m, 1.5)) < 1e-14);
  CHECK(f_profile(sh, m, 1.25) == doctest::Approx(oracle::kF125).epsilon(1e-12));
  CHECK(f_prime(sh, m, 1.5) == doctest::Approx(oracle::kFprimeMinus).epsilon(1e-13));
  CHECK(f_prime(sh, m, 1.0) == doctest::Approx(oracle::kFprimePlus).epsilon(1e-13));
  CHECK_THROWS_AS(f_profile(sh, m, 1e-4), DomainError);
}

TEST_CASE("ordering, domain and Lax errors") {
  const FluidModel m = numexample_model();
  CHECK_THROWS_AS(build_shock(m, 1.0, 1.0, 0.0, ShockFamily::Lax1Backward), OrderingError);
  CHECK_THROWS_AS(build_shock(m, 1.0, 1.5, 0.0, ShockFamily::Lax1Backward), OrderingError);
  CHECK_THROWS_AS(build_shock(m, 1.5, 1.0, 0.0, ShockFamily::Lax2Forward), OrderingError);
  CHECK_THROWS_AS(build_shock(m, 1.5, 5e-4, 0.0, ShockFamily::Lax1Backward), DomainError);
  CHECK_THROWS_AS(build_shock(to_eulerian(m), 1.5, 1.0, 0.0, ShockFamily::Lax1Backward), FrameError);

  // Margins shrink with the amplitude; below the floor the shock is rejected.
  try {
    build_shock(m, 1.0 + 1e-12, 1.0, 0.0, ShockFamily::Lax1Backward);
    FAIL("expected LaxError");
  } catch (const LaxError& e) {
    CHECK(std::min(e.margin_lo(), e.margin_hi()) <= kLaxMarginFloor);
  }
}

static void check_invariants(const ShockData& sh, const FluidModel& m) {
  const ShockResiduals r = shock_residuals(sh, m);
  CHECK(r.max() <= 1e-12);
  CHECK(sh.amplitude == std::abs(sh.v_minus - sh.v_plus));
  if (sh.family == ShockFamily::Lax1Backward) {
    CHECK(sh.speed < 0.0);
    CHECK(sh.v_minus > sh.v_plus);
    CHECK(f_prime(sh, m, sh.v_plus) < 0.0);
    CHECK(f_prime(sh, m, sh.v_minus) > 0.0);
  } else {
    CHECK(sh.speed > 0.0);
    CHECK(sh.v_plus > sh.v_minus);
    CHECK(f_prime(sh, m, sh.v_plus) > 0.0);
    CHECK(f_prime(sh, m, sh.v_minus) < 0.0);
  }
  // f convex and negative strictly between the end states
  const double lo = std::min(sh.v_minus, sh.v_plus), hi = std::max(sh.v_minus, sh.v_plus);
  for (int k = 1; k < 10; ++k) {
    const double v = lo + (hi - lo) * k / 10.0;
    CHECK(m.p(v, 2) > 0.0);
    CHECK(f_profile(sh, m, v) < 0.0);
  }
}

TEST_CASE("jump relations on random admissible shocks") {
  ShockSampler sampler(2024);
  for (const FluidModel& m : {numexample_model(), constant_coefficient_model()}) {
    for (int k = 0; k < 100; ++k) {
      check_invariants(sampler.backward(m), m);
      check_invariants(sampler.forward(m), m);
    }
  }
}
