#include <cmath>
#include <random>

#include "doctest.h"
#include "zlab/diophantine.hpp"
#include "zlab/zeta.hpp"

using namespace zlab;

TEST_CASE("trivial shifts") {
  ShiftResult r = find_shift({{2.0, 3.0}, {cplx(1, 0), cplx(1, 0)}, 0.1, 100});
  CHECK(r.found);
  CHECK(r.t == 0.0);
  CHECK(r.method == "trivial");

  ShiftResult half = find_shift({{2.0}, {cplx(-1, 0)}, 0.1, 100});
  REQUIRE(half.found);
  CHECK(half.t == doctest::Approx(M_PI / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("two generators: witness agrees with a stratified scan oracle") {
  const ShiftProblem p{{2.0, 3.0}, {cplx(-1, 0), cplx(1, 0)}, 0.1, 1e5};
  ShiftResult r = find_shift(p);
  REQUIRE(r.found);
  CHECK(r.verified_defect < 0.1);
  CHECK(shift_defect(p, r.t) < 0.1);
  // fine scan: the first hit interval starts no earlier than the returned witness region
  double first = -1;
  for (double t = 0; t <= r.t + 1 && first < 0; t += 1e-4) {
    if (shift_defect(p, t) < 0.1) first = t;
  }
  REQUIRE(first >= 0);
  CHECK(first <= r.t);
  CHECK(r.t - first < 0.2);
}

TEST_CASE("primes up to 13 with seeded unit targets") {
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    ShiftProblem p;
    p.generators = {2, 3, 5, 7, 11, 13};
    for (int j = 0; j < 6; ++j) p.targets.push_back(std::polar(1.0, u(rng)));
    p.eps = 0.3;
    p.T_max = 1e7;
    ShiftResult r = find_shift(p);
    if (r.found) {
      ++found;
      CHECK(r.t <= p.T_max);
      CHECK(shift_defect_precise(p, r.t, 256) < p.eps);
    }
  }
  CHECK(found >= 19);
}

TEST_CASE("conjugated targets take the mirrored witness") {
  const ShiftProblem p{{2.0, 5.0, 7.0}, {std::polar(1.0, 1.0), std::polar(1.0, -2.0), std::polar(1.0, 0.5)}, 0.2, 1e6};
  ShiftProblem q = p;
  for (auto& w : q.targets) w = std::conj(w);
  ShiftResult r = find_shift(p);
  ShiftResult s = find_shift(q);
  REQUIRE(r.found);
  REQUIRE(s.found);
  CHECK(shift_defect(q, -r.t) == doctest::Approx(shift_defect(p, r.t)).epsilon(1e-9));
  CHECK(shift_defect(q, s.t) < 0.2);
}

TEST_CASE("a miss reports the best t and its defect") {
  ShiftProblem p;
  p.generators = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int j = 0; j < 8; ++j) p.targets.push_back(std::polar(1.0, 0.7 * j + 1.3));
  p.eps = 0.05;
  p.T_max = 50;
  ShiftResult r = find_shift(p);
  CHECK(!r.found);
  CHECK(r.defect >= 0.05);
  CHECK(shift_defect(p, r.t) == doctest::Approx(r.defect));
}

TEST_CASE("shift problem validation") {
  CHECK_THROWS_AS(find_shift({{2.0, 2.0}, {cplx(1, 0), cplx(1, 0)}, 0.1, 10}), DomainError);
  CHECK_THROWS_AS(find_shift({{0.5}, {cplx(1, 0)}, 0.1, 10}), DomainError);
  CHECK_THROWS_AS(find_shift({{2.0}, {cplx(0.5, 0)}, 0.1, 10}), DomainError);
  CHECK(default_eps2(0.4, {0, 1}, 1.0) == doctest::Approx(0.4 / (4 * 1.5)));
}

namespace {
const CompactRegion K = CompactRegion::disc(cplx(0.5, 0.0), 0.25, 16, 8);
}

TEST_CASE("density: loose eps, exact section at t = 0, reproducibility") {
  const double alpha = 1 / M_PI, delta = 0.2;
  DensityEstimate all = density_estimate(SeriesSpec::hurwitz(alpha), TargetFunction::zero(), K, delta, 1e6, 100, 50, 9);
  CHECK(all.hit_fraction == 1.0);
  CHECK(all.hit_intervals.size() == 1);

  const TargetFunction section =
      TargetFunction::callable([=](cplx s) { return hurwitz_zeta_fast(1.0 + delta * s, alpha).value; }, "section");
  DensityEstimate near0 = density_estimate(SeriesSpec::hurwitz(alpha), section, K, delta, 0.05, 0.01, 400, 5);
  CHECK(near0.hit_fraction > 0.0);
  CHECK(near0.hits == static_cast<std::int64_t>(std::llround(near0.hit_fraction * 400)));
  CHECK(near0.wilson_low <= near0.hit_fraction);
  CHECK(near0.wilson_high >= near0.hit_fraction);

  DensityEstimate again = density_estimate(SeriesSpec::hurwitz(alpha), section, K, delta, 0.05, 0.01, 400, 5);
  CHECK(again.hits == near0.hits);
  for (std::size_t i = 0; i < again.samples.size(); ++i) CHECK(again.samples[i].t == near0.samples[i].t);
}

TEST_CASE("density is monotone in eps") {
  const TargetFunction f = TargetFunction::polynomial({cplx(0.5, 0.1)});
  std::int64_t previous = -1;
  for (double eps : {0.5, 1.0, 2.0, 4.0}) {
    DensityEstimate d = density_estimate(SeriesSpec::hurwitz(0.3), f, K, 0.3, eps, 1e3, 300, 17);
    CHECK(d.hits >= previous);
    previous = d.hits;
  }
}

TEST_CASE("batched Hurwitz evaluation matches the pointwise evaluator") {
  const TargetFunction f = TargetFunction::polynomial({cplx(0.2, -0.3)});
  DensityEstimate batched = density_estimate(SeriesSpec::hurwitz(1 / M_PI), f, K, 0.2, 1e6, 1e5, 30, 4);
  // integer lambda routes through the pointwise Hurwitz evaluator
  DensityEstimate pointwise = density_estimate(SeriesSpec::lerch(1.0, 1 / M_PI), f, K, 0.2, 1e6, 1e5, 30, 4);
  for (std::size_t i = 0; i < batched.samples.size(); ++i) {
    CHECK(batched.samples[i].defect == doctest::Approx(pointwise.samples[i].defect).epsilon(1e-9));
  }
}

TEST_CASE("density evaluation stays in Re > 1") {
  const CompactRegion left = CompactRegion::disc(cplx(0.0, 0.0), 0.25);
  CHECK_THROWS_AS(density_estimate(SeriesSpec::hurwitz(0.5), TargetFunction::zero(), left, 0.2, 1.0, 10, 10, 1),
                  DomainError);
  DensityEstimate l = density_estimate(SeriesSpec::dirichlet(character(5, 1)), TargetFunction::zero(), K, 0.2, 1e6,
                                       100, 5, 1);
  CHECK(l.hit_fraction == 1.0);
}
