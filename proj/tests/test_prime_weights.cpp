#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zlab/prime_weights.hpp"
#include "zlab/primes.hpp"

using namespace zlab;

TEST_CASE("cut exponents follow the log(1+xi)|b_k| steps") {
  PrimePartition half = make_partition({cplx(0.5, 0.0)}, 1.0, 100.0);
  CHECK(half.cut(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(half.b.back() == cplx(0.5, 0.0));

  PrimePartition part = make_partition({cplx(0.3, 0.0), cplx(0.0, -0.4)}, 1.0, 1e4);
  REQUIRE(part.blocks() == 3);
  const double lx = std::log1p(1.0);
  for (int k = 1; k <= part.blocks(); ++k) {
    const double step = part.log_cuts[k] - part.log_cuts[k - 1];
    CHECK(std::abs(step - lx * std::abs(part.b[k - 1])) <= 4 * std::numeric_limits<double>::epsilon());
    CHECK(part.ends[k] >= part.ends[k - 1]);
  }
  CHECK(part.ends.front() == 10000);
  CHECK(part.ends.back() == 100000000);
}

TEST_CASE("targets with sum |b_k| > 1 are rejected") {
  CHECK_THROWS_AS(make_partition({cplx(0.7, 0.0), cplx(0.0, 0.5)}, 1.0, 1e3), PreconditionError);
  auto c5 = character_table(5);
  CHECK_THROWS_AS(partition_primes({cplx(0.6, 0.0), cplx(0.6, 0.0)}, {c5[1], c5[2]}, 1.0, 1e3),
                  PreconditionError);
}

TEST_CASE("equivalent characters are rejected") {
  auto c5 = character_table(5);
  CHECK_THROWS_AS(partition_primes({cplx(0.1, 0.0), cplx(0.1, 0.0)}, {c5[0], character(1, 0)}, 1.0, 1e3),
                  PreconditionError);
}

TEST_CASE("mod 5 partition matches the direct prime-sum oracle") {
  auto c5 = character_table(5);
  PartitionResult r = partition_primes({cplx(0.3, 0.0), cplx(0.0, -0.4)}, {c5[1], c5[2]}, 1.0, 1e4);
  // numpy sieve to 10^8, float64 sums over the same block rule
  CHECK(r.prime_count == 5760226);
  CHECK(r.achieved[0].real() == doctest::Approx(0.29884797749402847).epsilon(1e-12));
  CHECK(r.achieved[0].imag() == doctest::Approx(-0.0002595661678532533).epsilon(1e-9));
  CHECK(r.achieved[1].real() == doctest::Approx(-0.0007042297955254449).epsilon(1e-9));
  CHECK(r.achieved[1].imag() == doctest::Approx(-0.39924030434058894).epsilon(1e-12));
  CHECK(r.max_error < 1.2 * 0.0011809023879046556);

  // the stored rules reproduce the table used by the sum
  for (std::int64_t p : {10007LL, 84053LL, 84059LL, 3147877LL, 99999989LL}) {
    const std::int64_t m = p <= r.partition.ends[1] ? 1 : p <= r.partition.ends[2] ? 2 : 3;
    cplx want(1.0, 0.0);
    if (m == 1) want = std::conj(c5[1](p));
    if (m == 2) want = std::conj(c5[2](p)) * cplx(0.0, -1.0);
    if (m == 3 && r.aux.is_unit(p)) want = std::conj(r.aux(p));
    CHECK(std::abs(r.weights.value(p) - want) < 1e-15);
  }
}

TEST_CASE("partition error shrinks from P = 1e3 to 1e4") {
  auto c5 = character_table(5);
  const std::vector<cplx> b{cplx(0.3, 0.0), cplx(0.0, -0.4)};
  const double e3 = partition_primes(b, {c5[1], c5[2]}, 1.0, 1e3).max_error;
  const double e4 = partition_primes(b, {c5[1], c5[2]}, 1.0, 1e4).max_error;
  CHECK(e4 < e3);
}

TEST_CASE("zero targets hand the whole interval to the auxiliary block") {
  auto c5 = character_table(5);
  PartitionResult r = partition_primes({cplx(0.0, 0.0)}, {c5[1]}, 1.0, 1e3);
  CHECK(r.partition.ends[1] == r.partition.ends[0]);
  CHECK(r.weights.provenance(5003) == "partition:block2");
  CHECK(r.max_error < 0.05);
}

TEST_CASE("constant targeting with a seed at p = 2") {
  const Character zeta = character(1, 0);
  const cplx C(0.2, -0.1);
  TargetConstantsResult r = target_constants({C}, {{2, cplx(-1.0, 0.0)}}, {zeta}, 0.05, 1e6);
  CHECK(r.weights.turns(2) == 0.5);
  CHECK(r.weights.value(2) == cplx(std::cos(std::numbers::pi), std::sin(std::numbers::pi)));
  CHECK(r.weights.provenance(2) == "seed");
  CHECK(r.M >= 1);
  double mass = 0.0;
  for (cplx e : r.E) mass += std::abs(e);
  CHECK(mass < std::log(2.0));
  CHECK(r.success);

  // independent summation, separate from the library's bookkeeping
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t p : primes_up_to(r.P)) {
    const double t = 2 * std::numbers::pi * r.weights.turns(p);
    const cplx l = std::log(1.0 - cplx(std::cos(t), std::sin(t)) / double(p));
    re += l.real();
    im += l.imag();
  }
  const cplx total(double(re) + C.real(), double(im) + C.imag());
  CHECK(std::abs(total) < 0.05);
  CHECK(std::abs(total - r.achieved[0]) < 1e-9);
}

TEST_CASE("zero constants without seeds") {
  auto c3 = character_table(3);
  TargetConstantsResult r = target_constants({cplx(0.0, 0.0)}, {}, {c3[1]}, 0.05, 1e6);
  CHECK(r.success);
  CHECK(std::abs(log_euler_partial(r.weights, c3[1], r.P)) < 0.05);
}

TEST_CASE("a tiny budget reports the minimal one") {
  try {
    target_constants({cplx(3.0, 0.0)}, {}, {character(1, 0)}, 0.05, 100.0);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.parameter == "P_budget");
    CHECK(e.minimal > 100.0);
  }
}

TEST_CASE("Le2 infeasible delta reports the bound") {
  auto c3 = character_table(3);
  auto K = CompactRegion::disc(0.0, 0.05, 8, 8);
  try {
    construct_le2({TargetFunction::zero()}, K, {}, {c3[1]}, 0.3, 0.5);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.parameter == "delta_max");
    CHECK(e.minimal < 0.3);
  }
  try {
    construct_le2({TargetFunction::zero()}, K, {}, {c3[1]}, 0.05, 0.5);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.parameter == "delta_min");
    CHECK(e.minimal > 0.05);
  }
}

TEST_CASE("Le2 end to end for f = 0 and a seeded principal character") {
  auto K = CompactRegion::disc(0.0, 0.05, 12, 12);
  const double eps = 0.5;

  SUBCASE("f = 0, character mod 3") {
    auto c3 = character_table(3);
    Le2Result r = construct_le2({TargetFunction::zero()}, K, {}, {c3[1]}, 0.125, eps);
    for (const auto& s : r.report.stages) {
      INFO(s.name, " ", s.measured, " / ", s.budget);
      CHECK(s.pass);
    }
    CHECK(r.report.success);
    CHECK(r.report.final_error < eps);
    CHECK(r.P1 <= r.P2);
    CHECK(r.P3 <= 10000000);
    // spot check the grid against a fresh evaluation
    const cplx s0 = K.grid()[3];
    CHECK(std::abs(evaluate_h(r.weights, c3[1], 1.0 + 0.125 * s0, r.P4) - r.h_on_grid[0][3]) < 1e-9);
  }

  SUBCASE("principal mod 2, a_2 = -1, constant target") {
    TargetFunction f = TargetFunction::polynomial({cplx(0.3, -0.2)});
    f.shift = cplx(0.3, -0.2);
    Le2Result r = construct_le2({f}, K, {{2, cplx(-1.0, 0.0)}}, {character(2, 0)}, 0.125, eps);
    CHECK(r.weights.turns(2) == 0.5);
    CHECK(r.report.final_error < eps);
  }
}
