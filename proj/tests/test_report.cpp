#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "zlab/primes.hpp"
#include "zlab/report.hpp"

using namespace zlab;

TEST_CASE("decimal strings round-trip doubles exactly") {
  for (double x : {0.0, -0.0, 1.0 / 3, M_PI, 1e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    CHECK(parse_double(dec(x)) == x);
  }
  CHECK(parse_cplx(dec(cplx(0.1, -2.5))) == cplx(0.1, -2.5));
  CHECK_THROWS_AS(parse_double("1.0x"), DomainError);
}

TEST_CASE("prime weights with rules and seeds round-trip") {
  const CharacterSet c5 = character_table(5);
  PartitionResult r = partition_primes({cplx(0.3, 0.0), cplx(0.0, -0.4)}, {c5[1], c5[2]}, 1.0, 100);
  WeightAssignment w = r.weights;
  w.seed(2, 0.5);
  w.set(2, 0.5, "seed");
  const json j = to_json(w);
  CHECK(j["schema"] == "zlab.weights");
  CHECK(j["version"] == kSchemaVersion);
  WeightAssignment back = weights_from_json(json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());
  for (std::int64_t p : primes_in(100, 10000)) {
    REQUIRE(back.has(p));
    CHECK(back.turns(p) == w.turns(p));
    CHECK(back.provenance(p) == w.provenance(p));
  }
  CHECK(back.value(2) == cplx(-1.0, std::sin(M_PI)));
}

TEST_CASE("relation-forced angles keep their full precision") {
  WeightAssignment w(IndexKind::shifted_integer);
  w.alpha_descriptor = "sqrt2-1";
  {
    PrecisionScope scope(192);
    w.set(0, 0.0, "anchor");
    w.set_precise(2, Real(1) / Real(3), "relation");
  }
  RelationCertificate c;
  c.b = {{0, 1}, {2, 1}};
  c.residual = 1e-60;
  c.exact = true;
  w.certificates.push_back(c);
  WeightAssignment back = weights_from_json(to_json(w));
  PrecisionScope scope(192);
  CHECK(abs(back.turns_precise(2) - Real(1) / Real(3)) < Real(1e-55));
  CHECK(back.certificates.size() == 1);
  CHECK(back.certificates[0].b == c.b);
  CHECK(back.certificates[0].exact);
}

TEST_CASE("kernel grid round-trips bit-exactly and emits CSV") {
  std::vector<cplx> v;
  for (int m = 0; m <= 10; ++m) v.emplace_back(std::exp(-0.3 * m), std::sin(m) / 7);
  KernelGrid g(0.0, 3.0, v);
  KernelGrid back = kernel_from_json(json::parse(to_json(g).dump()));
  CHECK(back.values() == g.values());
  CHECK(back.B() == g.B());
  const std::string csv = kernel_csv(g);
  CHECK(csv.rfind("x,re_g,im_g\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
}

TEST_CASE("schema mismatch is rejected") {
  json j = to_json(KernelGrid(0.0, 1.0, {cplx(1.0), cplx(2.0)}));
  CHECK_THROWS_AS(weights_from_json(j), DomainError);
  j["version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(kernel_from_json(j), DomainError);
}

TEST_CASE("density and zero reports") {
  const CompactRegion K = CompactRegion::disc(cplx(0.5, 0.0), 0.25, 16, 16);
  DensityEstimate d = density_estimate(SeriesSpec::hurwitz(0.3), TargetFunction::zero(), K, 0.5, 1e6, 50.0, 20, 3);
  const json j = to_json(d);
  CHECK(j["hits"] == 20);
  CHECK(j["rng_seed"] == 3);
  const std::string csv = density_csv(d);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
  CHECK(to_json(density_estimate(SeriesSpec::hurwitz(0.3), TargetFunction::zero(), K, 0.5, 1e6, 50.0, 20, 3)).dump() ==
        j.dump());

  const RectContour box{1.1, 1.3, 10.0, 12.0, 16};
  const json z = to_json(0.25, box, count_zeros_rect(0.25, box));
  for (const char* key : {"alpha", "box", "count", "residual", "min_modulus", "node_count"}) CHECK(z.contains(key));
  CHECK(z["count"] == 0);
}
