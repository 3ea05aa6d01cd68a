#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "zlab/hurwitz_weights.hpp"

using namespace zlab;

namespace {

// Laplace transform over [0, 2] of g(x) = c0 + c1 x + c2 x^2, in closed form.
TargetFunction quadratic_transform(cplx c0, cplx c1, cplx c2) {
  return TargetFunction::callable(
      [=](cplx s) {
        const cplx e = std::exp(-2.0 * s);
        return c0 * (1.0 - e) / s + c1 * (1.0 - e * (1.0 + 2.0 * s)) / (s * s) +
               c2 * (2.0 - e * (4.0 * s * s + 4.0 * s + 2.0)) / (s * s * s);
      },
      "quadratic");
}

TargetFunction seeded_target(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto draw = [&] { return cplx(u(rng), u(rng)); };
  const cplx c0 = draw(), c1 = draw(), c2 = draw();
  return quadratic_transform(c0, c1, c2);
}

const CompactRegion K = CompactRegion::disc(cplx(0.5, 0.0), 0.25);

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("zero target: anchor, unit modulus, determinism") {
  const auto alpha = AlphaDescriptor::parse("1/pi");
  HurwitzResult r = build_omega_hurwitz(TargetFunction::zero(), K, alpha, 0.25, 2.0);
  CHECK(r.weights.turns(0) == 0.0);
  CHECK(r.weights.provenance(0) == "anchor");
  CHECK(r.N == 2980);
  for (std::int64_t n = 0; n <= r.N; ++n) CHECK(std::abs(std::abs(r.combined(n)) - 1.0) < 1e-15);
  CHECK(r.report.final_error == doctest::Approx(sup_norm(r.sum_on_grid)).epsilon(1e-14));

  HurwitzResult again = build_omega_hurwitz(TargetFunction::zero(), K, alpha, 0.25, 2.0);
  bool identical = true;
  for (std::int64_t n = 0; n <= r.N; ++n) identical = identical && r.weights.turns(n) == again.weights.turns(n);
  CHECK(identical);
}

TEST_CASE("sqrt2 - 1: omega(alpha) omega(2 + alpha) = 1") {
  HurwitzResult r = build_omega_hurwitz(seeded_target(7), K, AlphaDescriptor::parse("sqrt2-1"), 0.25, 2.0);
  CHECK(r.mode == OmegaMode::algebraic);
  CHECK(!r.membership.in_A(2));
  CHECK(r.weights.provenance(2) == "relation");
  PrecisionScope scope(192);
  Real sum = r.weights.turns_precise(0) + r.weights.turns_precise(2);
  sum -= round(sum);
  CHECK(abs(sum) < Real(1e-21));
  CHECK(r.multiplicativity_defect < 1e-20);
  REQUIRE(r.report.find_stage("tra2") != nullptr);
  CHECK(r.report.find_stage("tra2")->measured > 0.0);
}

TEST_CASE("1/pi at delta = 0.2: sums agree with an independent reverse summation") {
  const TargetFunction f = seeded_target(11);
  HurwitzResult r = build_omega_hurwitz(f, K, AlphaDescriptor::parse("1/pi"), 0.2, 2.0);
  CHECK(r.N == 22026);
  CHECK(r.N1 == 10);
  for (const char* name : {"ii", "h1", "iii", "iv", "tra4", "final", "multiplicativity"}) {
    CHECK(r.report.find_stage(name) != nullptr);
  }
  const double alpha = 1 / M_PI;
  double worst = 0.0, final_err = 0.0;
  for (std::size_t i = 0; i < K.grid().size(); i += 7) {
    const cplx z = 1.0 + 0.2 * K.grid()[i];
    std::complex<long double> s = 0;
    for (std::int64_t n = r.N; n >= 0; --n) s += std::complex<long double>(r.combined(n) * std::pow(n + alpha, -z));
    worst = std::max(worst, std::abs(cplx(s) - r.sum_on_grid[i]));
    final_err = std::max(final_err, std::abs(cplx(s) - f(K.grid()[i])));
  }
  CHECK(worst < 1e-12);
  CHECK(final_err <= r.report.final_error + 1e-12);
}

TEST_CASE("Lerch weights: integer lambda reproduces the Hurwitz weights") {
  const auto alpha = AlphaDescriptor::parse("1/pi");
  const TargetFunction f = seeded_target(3);
  HurwitzResult h = build_omega_hurwitz(f, K, alpha, 1.0 / 3, 2.0);
  HurwitzResult l0 = build_omega_lerch(f, K, alpha, 0.0, 1.0 / 3, 2.0);
  HurwitzResult l1 = build_omega_lerch(f, K, alpha, 1.0, 1.0 / 3, 2.0);
  bool same = true;
  for (std::int64_t n = 0; n <= h.N; ++n) {
    same = same && h.weights.turns(n) == l0.weights.turns(n) && l0.weights.turns(n) == l1.weights.turns(n);
  }
  CHECK(same);
  CHECK(h.report.final_error == l1.report.final_error);

  HurwitzResult half = build_omega_lerch(f, K, alpha, 0.5, 1.0 / 3, 2.0);
  for (std::int64_t n = 0; n <= half.N; ++n) {
    const cplx w = half.weights.value(n) * (n % 2 ? -1.0 : 1.0);
    CHECK(std::abs(std::abs(w) - 1.0) < 1e-15);
    CHECK(std::abs(w - half.combined(n)) < 1e-12);
  }
  CHECK(std::isfinite(half.report.final_error));
}

TEST_CASE("Lerch weights keep relations for algebraic alpha") {
  HurwitzResult r = build_omega_lerch(seeded_target(5), K, AlphaDescriptor::parse("sqrt2-1"), 0.3, 0.25, 2.0);
  CHECK(r.multiplicativity_defect < 1e-20);
  CHECK(r.weights.provenance(2) == "relation");
}

TEST_CASE("staged errors shrink along the delta ladder") {
  const auto alpha = AlphaDescriptor::parse("1/pi");
  std::vector<double> previous_final, previous_iii;
  for (double delta : {0.5, 1.0 / 3, 0.25, 0.2}) {
    std::vector<double> finals, iiis;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      HurwitzResult r = build_omega_hurwitz(seeded_target(seed), K, alpha, delta, 2.0);
      finals.push_back(r.report.final_error);
      iiis.push_back(r.report.find_stage("iii")->measured);
    }
    if (!previous_final.empty()) {
      CHECK(median(finals) <= median(previous_final));
      // at delta = 0.5 the tracking window holds about 50 terms; judged from 1/3 down
      if (delta < 0.3) CHECK(median(iiis) < median(previous_iii));
    }
    previous_final = finals;
    previous_iii = iiis;
  }
}

TEST_CASE("weight construction preconditions") {
  const auto pi_inv = AlphaDescriptor::parse("1/pi");
  CHECK_THROWS_AS(build_omega_hurwitz(TargetFunction::zero(), K, AlphaDescriptor::parse("1/3"), 0.25, 2.0),
                  DomainError);
  CHECK_THROWS_AS(build_omega_hurwitz(TargetFunction::zero(), K, pi_inv, 0.6, 2.0), InfeasibleError);
  try {
    build_omega_hurwitz(TargetFunction::zero(), K, pi_inv, 0.2, 4.0);
    FAIL("expected an index budget failure");
  } catch (const InfeasibleError& e) {
    CHECK(e.parameter == "delta");
    CHECK(e.minimal == doctest::Approx(4.0 / std::log(1e6)));
  }
  const CompactRegion left = CompactRegion::disc(cplx(0.0, 0.0), 0.25);
  CHECK_THROWS_AS(build_omega_hurwitz(TargetFunction::zero(), left, AlphaDescriptor::parse("sqrt2-1"), 0.25, 2.0),
                  PreconditionError);
  CHECK_THROWS_AS(build_omega_hurwitz(TargetFunction::zero(), K, pi_inv, 0.25, 2.0, OmegaMode::algebraic),
                  DomainError);
}
