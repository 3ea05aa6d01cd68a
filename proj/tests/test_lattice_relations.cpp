#include <cmath>

#include "doctest.h"
#include "zlab/relations.hpp"

using namespace zlab;

namespace {

bool has_relation(const RelationSearch& rs, std::vector<std::pair<std::int64_t, std::int64_t>> b) {
  for (const auto& c : rs.certificates) {
    if (c.b == b) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("LLL reduces a skewed planar basis to the standard one") {
  IntMatrix b{{BigInt(1), BigInt(0)}, {BigInt(1000001), BigInt(1)}};
  LllResult r = lll_reduce(b);
  for (const auto& row : r.basis) CHECK(abs(row[0]) + abs(row[1]) == 1);
  CHECK(r.log2_gso[0] == doctest::Approx(0.0));
}

TEST_CASE("integer relation among logs of 2, 3, 6, 5") {
  PrecisionScope scope(256);
  std::vector<Real> x{log(Real(2)), log(Real(3)), log(Real(6)), log(Real(5))};
  IntegerRelationResult r = integer_relations(x, {});
  REQUIRE(r.relations.size() == 1);
  auto c = r.relations[0];
  if (c[2] < 0) for (auto& v : c) v = -v;
  CHECK(c == std::vector<std::int64_t>{-1, -1, 1, 0});
}

TEST_CASE("number field invariants") {
  NumberField q2({-1, 2, 1});
  CHECK(q2.discriminant() == 8);
  CHECK(q2.unit_rank() == 1);
  NumberField c2({-2, 0, 0, 1});
  CHECK(c2.discriminant() == -108);
  CHECK(c2.real_embeddings() == 1);
  CHECK(c2.unit_rank() == 1);
  CHECK(c2.norm_of_shift(1) == 3);
  CHECK(factor_u64(600851475143ULL) == std::vector<std::pair<std::uint64_t, int>>{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
  CHECK(is_prime_u64(1000000007ULL));
}

TEST_CASE("sqrt2 - 1 has the relation alpha (2 + alpha) = 1") {
  const auto alpha = AlphaDescriptor::parse("sqrt2-1");
  RelationSearch rs = detect_relations(alpha, 2, 20);
  REQUIRE(rs.certificates.size() == 1);
  const auto& c = rs.certificates[0];
  CHECK(c.b == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {2, 1}});
  CHECK(c.exact);
  CHECK(c.residual_check < 1e-40);

  PrecisionScope scope(256);
  const Real a = alpha.value();
  CHECK(abs(a * (2 + a) - 1) < Real(1e-70));

  RelationSearch wider = detect_relations(alpha, 10, 20);
  CHECK(has_relation(wider, {{0, 1}, {1, -1}, {3, 1}}));
  for (const auto& cert : wider.certificates) CHECK(cert.exact);
}

TEST_CASE("no relation for 1/pi at N = 100, height 20") {
  RelationSearch rs = detect_relations(AlphaDescriptor::parse("1/pi"), 100, 20);
  CHECK(rs.certificates.empty());
  CHECK(rs.precision_bits >= 541);
  CHECK(rs.method == "lll");
  // no integer vector of height 20 can sit below the reduced lattice floor
  CHECK(rs.exclusion_log2 > 0.0);
}

TEST_CASE("relation search preconditions") {
  CHECK_THROWS_AS(detect_relations(AlphaDescriptor::parse("1/4"), 10, 20), DomainError);
  CHECK_THROWS_AS(detect_relations(AlphaDescriptor::parse("0.25"), 10, 20), DomainError);
  CHECK_THROWS_AS(detect_relations(AlphaDescriptor::parse("1/pi"), 10, 20, {64, 160}), PrecisionError);
  CHECK_THROWS_AS(detect_relations(AlphaDescriptor::parse("1/pi"), 500, 20), InfeasibleError);
  RelationSearch big = detect_relations(AlphaDescriptor::parse("sqrt2-1"), 300, 3);
  CHECK(big.method == "valuations");
  CHECK(has_relation(big, {{0, 1}, {2, 1}}));
}

TEST_CASE("descriptor parsing") {
  CHECK(AlphaDescriptor::parse("6/8").q == 4);
  CHECK(AlphaDescriptor::parse("0.25").kind == AlphaDescriptor::Kind::rational);
  CHECK(AlphaDescriptor::parse("cbrt2").value_double() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(AlphaDescriptor::parse("1/pi").value_double() == doctest::Approx(1 / M_PI).epsilon(1e-15));
  CHECK(AlphaDescriptor::parse("num:0.318").kind == AlphaDescriptor::Kind::numeric);
  CHECK(AlphaDescriptor::parse("poly:-1,2,1@0.41").value_double() == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK_THROWS_AS(AlphaDescriptor::parse("poly:-4,0,1@2"), DomainError);
}

TEST_CASE("Cassels set for sqrt2 - 1 matches the independent count") {
  CasselsSet set = cassels_set(AlphaDescriptor::parse("sqrt2-1"), 10000, 0.5);
  std::int64_t in_A = 0;
  std::vector<std::int64_t> first;
  for (std::int64_t n = 0; n <= set.N_max(); ++n) {
    in_A += set.in_A(n);
    if (!set.in_A(n) && first.size() < 5) first.push_back(n);
    if (!set.in_A(n)) REQUIRE(set.witness(n) != nullptr);
  }
  CHECK(in_A == 8178);
  CHECK(first == std::vector<std::int64_t>{2, 3, 11, 29, 40});
  CHECK(set.notes.empty());
  for (const auto& c : set.certificates) CHECK(c.exact);
  REQUIRE(!set.windows.empty());
  for (const auto& w : set.windows) CHECK(w.proven_density >= 0.51);
}

TEST_CASE("Cassels windows for cubic shifts and transcendental alpha") {
  for (const char* s : {"cbrt2", "cbrt2-1"}) {
    CasselsSet set = cassels_set(AlphaDescriptor::parse(s), 10000, 0.5);
    for (const auto& w : set.windows) CHECK(w.proven_density >= 0.51);
    CHECK(set.notes.empty());
  }
  CasselsSet t = cassels_set(AlphaDescriptor::parse("1/pi"), 2000, 0.5);
  for (const auto& w : t.windows) CHECK(w.proven_density == 1.0);
  CHECK(t.windows.front().N == 100);
  CHECK(t.windows.front().M == static_cast<std::int64_t>(100 / std::sqrt(std::log(100.0))));
}
