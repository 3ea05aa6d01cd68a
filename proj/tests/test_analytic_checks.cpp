#include <cmath>
#include <random>

#include "doctest.h"
#include "zlab/analytic_checks.hpp"
#include "zlab/precision.hpp"
#include "zlab/zeta.hpp"

using namespace zlab;

TEST_CASE("Riemann zeta has no zeros right of 1") {
  for (double t1 : {0.5, 14.0, 100.0}) {
    ZeroCount z = count_zeros_rect(1.0, {1.05, 1.6, t1, t1 + 10.0, 32});
    CHECK(z.count == 0);
    CHECK(z.winding_residual < 1e-10);
  }
}

TEST_CASE("zero count agrees with a fine modulus grid") {
  const RectContour box{1.1, 1.4, 20.0, 30.0, 32};
  double grid_min = INFINITY;
  for (int i = 0; i <= 60; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const cplx s(box.sigma1 + (box.sigma2 - box.sigma1) * i / 60.0, box.t1 + (box.t2 - box.t1) * j / 200.0);
      grid_min = std::min(grid_min, std::abs(hurwitz_zeta_fast(s, 0.25).value));
    }
  }
  CHECK(grid_min > 1.0);
  CHECK(count_zeros_rect(0.25, box).count == 0);
}

TEST_CASE("located zeros right of 1, confirmed against mpmath findroot") {
  ZeroHunt h = hunt_zero(0.75, 1.001, 1.1, 100.0, 200.0);
  REQUIRE(h.confirmed);
  CHECK(h.zero.real() == doctest::Approx(1.01063113849996216).epsilon(1e-9));
  CHECK(h.zero.imag() == doctest::Approx(152.147625864684725).epsilon(1e-11));
  CHECK(h.box_count.count == 1);

  ZeroHunt g = hunt_zero(0.9, 1.001, 1.1, 100.0, 110.0);
  REQUIRE(g.confirmed);
  CHECK(g.zero.real() == doctest::Approx(1.04966603960305418).epsilon(1e-9));
  CHECK(g.zero.imag() == doctest::Approx(105.306646637288615).epsilon(1e-11));

  // a box holding the zero and a larger one both count it once
  const cplx z = h.zero;
  CHECK(count_zeros_rect(0.75, {1.002, 1.05, z.imag() - 0.5, z.imag() + 0.5, 32}).count == 1);
}

TEST_CASE("alpha = 1/4: no modulus dip in 1 < sigma < 1.1 up to t = 500") {
  ZeroHunt h = hunt_zero(0.25, 1.001, 1.1, 0.0, 500.0);
  CHECK(!h.confirmed);
  CHECK(h.status == "inconclusive");
  CHECK(h.min_modulus > 2.0);
}

TEST_CASE("counts are stable under node doubling and small perturbations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double s1 = 1.001 + 0.05 * u(rng);
    const double t1 = 140.0 + 20.0 * u(rng);
    const RectContour c{s1, s1 + 0.1, t1, t1 + 5.0, 32};
    const int base = count_zeros_rect(0.75, c).count;
    RectContour finer = c;
    finer.nodes_per_edge = 64;
    CHECK(count_zeros_rect(0.75, finer).count == base);
    RectContour moved{c.sigma1 * 1.0001, c.sigma2 * 0.999, c.t1 * 1.001, c.t2 * 0.999, 32};
    CHECK(count_zeros_rect(0.75, moved).count == base);
  }
}

TEST_CASE("contour preconditions") {
  CHECK_THROWS_AS(count_zeros_rect(0.25, {0.9, 1.2, 0.0, 1.0, 32}), DomainError);
  CHECK_THROWS_AS(count_zeros_rect(0.25, {1.1, 1.2, 0.0, 1.0, 8}), DomainError);
  // an edge through the zero trips the guard
  const double re = 1.01063113849996216, im = 152.147625864684725;
  CHECK_THROWS_AS(count_zeros_rect(0.75, {re, re + 0.02, im - 0.01, im + 0.01, 16}), Error);
}

TEST_CASE("integral lower bound") {
  IntegralBound a = integral_lower_bound_check(0.25, 37.2, 0.05);
  CHECK(a.integral == doctest::Approx(0.210884385587852150).epsilon(1e-9));
  CHECK(a.log10_bound == doctest::Approx((7.0 / 0.3) * std::log10(0.05) - 180.0));
  CHECK(a.bound > 0.0);
  CHECK(a.bound < 1e-200);
  CHECK(a.pass);
  CHECK(integral_lower_bound_check(0.25, 0.5, 0.05).integral == doctest::Approx(0.165035031322298418).epsilon(1e-9));
  IntegralBound tiny = integral_lower_bound_check(1 / M_PI, 10.0, 0.01);
  CHECK(tiny.bound == 0.0);
  CHECK(tiny.pass);
  CHECK_THROWS_AS(integral_lower_bound_check(0.25, 1.0, 0.06), DomainError);
  // widening the interval cannot shrink the integral
  CHECK(integral_lower_bound_check(0.25, 37.2, 0.04).integral < a.integral);
}
