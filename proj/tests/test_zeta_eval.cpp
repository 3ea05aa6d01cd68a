#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zlab/characters.hpp"
#include "zlab/lfunction.hpp"
#include "zlab/zeta.hpp"

using namespace zlab;

namespace {

Real mp(const char* s) { return Real(s); }

double dist(const PrecisionComplex& v, const char* re, const char* im = "0") {
  PrecisionScope scope(v.prec_bits() + 16);
  MpComplex w{Real(re), Real(im)};
  return abs(v.value() - w).convert_to<double>();
}

// Direct partial sum of n^{-2} with the integral bracket for the tail:
// 1/(N+1) < sum_{n>N} n^{-2} < 1/N.
std::pair<double, double> zeta2_bracket(long N) {
  long double s = 0;
  for (long n = N; n >= 1; --n) s += 1.0L / ((long double)n * n);
  return {double(s + 1.0L / (N + 1)), double(s + 1.0L / N)};
}

}  // namespace

TEST_CASE("hurwitz_zeta: zeta(2) against a direct series oracle") {
  auto [lo, hi] = zeta2_bracket(2000000);
  PrecisionComplex z = hurwitz_zeta({2.0, 0.0}, Real(1), 128);
  double v = z.to_complex().real();
  CHECK(v >= lo - 1e-15);
  CHECK(v <= hi + 1e-15);
  CHECK(z.err_abs() < std::ldexp(1.0, -64));
  PrecisionScope scope(160);
  Real pi2_6 = pi_real() * pi_real() / 6;
  CHECK(dist(z, to_decimal(pi2_6, 50).c_str()) <= z.err_abs() + 1e-45);
}

TEST_CASE("hurwitz_zeta: alpha = 1/2 doubles into (2^2-1) zeta(2)") {
  PrecisionComplex z = hurwitz_zeta({2.0, 0.0}, Real(0.5), 128);
  PrecisionScope scope(160);
  Real pi2_2 = pi_real() * pi_real() / 2;
  CHECK(dist(z, to_decimal(pi2_2, 50).c_str()) <= z.err_abs() + 1e-45);
}

TEST_CASE("hurwitz_zeta: index shift zeta(s,a) - a^-s = zeta(s,1+a)") {
  PrecisionScope scope(128);
  Real a("0.3");
  PrecisionComplex lhs = hurwitz_zeta({3.0, 0.0}, a, 128);
  PrecisionComplex rhs = hurwitz_zeta({3.0, 0.0}, Real(a + 1), 128);
  MpComplex apow = pow_neg(a, MpComplex(Real(3), Real(0)));
  PrecisionComplex shift(apow, 1e-36, 128);
  CHECK(within_combined_error(lhs - shift, rhs));
}

TEST_CASE("hurwitz_zeta: frozen values, including the continuation region") {
  // Reference values computed once with an independent arbitrary-precision package.
  PrecisionScope scope(128);
  Real third2 = Real(2) / 3;
  auto v1 = hurwitz_zeta({2.0, 1.0}, third2, 128);
  CHECK(dist(v1, "2.377501678217108513935193601765142319286", "0.3880928477810462013808692062568556286448") < 1e-30);
  auto v2 = hurwitz_zeta({0.5, 3.0}, mp("0.3"), 128);
  CHECK(dist(v2, "-1.470133926867638871840744863722502606417", "-1.270023881690922412719968309573251116521") < 1e-30);
  auto v3 = hurwitz_zeta({-1.5, 2.0}, mp("0.7"), 128);
  CHECK(dist(v3, "0.006573499585885262464726577503564497660086", "0.1135979158772205573348603941075723634978") < 1e-30);
  Real inv_pi = 1 / pi_real();
  auto v4 = hurwitz_zeta({1.0, 10.0}, inv_pi, 128);
  CHECK(dist(v4, "0.5888754278112812868944300745017750343313", "-3.394430795391986169747300203530476331068") < 1e-30);
  CHECK(v4.err_abs() < 1e-30);
}

TEST_CASE("hurwitz_zeta: pole and domain errors") {
  CHECK_THROWS_AS(hurwitz_zeta({1.0, 0.0}, Real(1), 64), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta({2.0, 0.0}, Real(0), 64), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta({2.0, 0.0}, Real(-0.5), 64), DomainError);
}

TEST_CASE("hurwitz_zeta: err_abs bounds the error against a doubled-precision recomputation") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> sig(-2.0, 4.0), tt(-30.0, 30.0), al(0.05, 1.0);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    cplx s(sig(rng), tt(rng));
    if (std::abs(s - 1.0) < 0.05) continue;
    Real a(al(rng));
    auto lo = hurwitz_zeta(s, a, 64);
    auto hi = hurwitz_zeta(s, a, 128);
    CHECK(abs_diff(lo, hi) <= lo.err_abs() + hi.err_abs());
    CHECK(lo.err_abs() < std::ldexp(1.0, -32) * std::max(1.0, lo.abs().convert_to<double>()));
    ++checked;
  }
  CHECK(checked > 90);
}

TEST_CASE("hurwitz_zeta: shift identity and the alpha=1/2 identity on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sig(1.1, 3.0), tt(-20.0, 20.0), al(0.05, 1.0);
  for (int i = 0; i < 20; ++i) {
    cplx s(sig(rng), tt(rng));
    Real a(al(rng));
    PrecisionScope scope(128);
    auto lhs = hurwitz_zeta(s, a, 128);
    auto rhs = hurwitz_zeta(s, Real(a + 1), 128);
    MpComplex ap = pow_neg(a, MpComplex::from(s));
    PrecisionComplex apow(ap, 8 * unit_roundoff(128) * abs(ap).convert_to<double>(), 128);
    CHECK(within_combined_error(lhs - apow, rhs, 1e-36));

    auto half = hurwitz_zeta(s, Real(0.5), 128);
    auto one = hurwitz_zeta(s, Real(1), 128);
    MpComplex two_s = pow_neg(Real(2), MpComplex::from(-s));
    PrecisionComplex factor(two_s - MpComplex(Real(1), Real(0)), 1e-37, 128);
    CHECK(within_combined_error(half, factor * one, 1e-36));
  }
}

TEST_CASE("lerch_zeta: integer lambda reduces to Hurwitz") {
  PrecisionScope scope(128);
  Real a("0.37");
  auto h = hurwitz_zeta({2.5, 1.0}, a, 128);
  auto l0 = lerch_zeta(0.0, a, {2.5, 1.0}, 128);
  auto l1 = lerch_zeta(1.0, a, {2.5, 1.0}, 128);
  CHECK(within_combined_error(h, l0));
  CHECK(within_combined_error(h, l1));
}

TEST_CASE("lerch_zeta: lambda = 1/2 matches the alternating series pi^2/12") {
  auto l = lerch_zeta(0.5, Real(1), {2.0, 0.0}, 128);
  // Alternating-series oracle: partial sums bracket the limit.
  long double s = 0;
  for (int k = 0; k < 200000; ++k) s += (k % 2 ? -1.0L : 1.0L) / ((long double)(k + 1) * (k + 1));
  CHECK(std::abs(l.to_complex().real() - double(s)) < 1.0 / (200001.0 * 200001.0));
  CHECK(dist(l, "0.8224670334241132182362075833230125946095") <= l.err_abs() + 1e-37);
}

TEST_CASE("lerch_zeta: frozen values and regime error") {
  // lambda enters as the binary double nearest 0.3 (resp. 0.01); the references use the same value.
  PrecisionScope scope(128);
  Real inv_pi = 1 / pi_real();
  auto v = lerch_zeta(0.3, inv_pi, {1.5, 2.0}, 128);
  CHECK(dist(v, "-3.765607432111587748891863242339847794586", "4.978182062397855451259681186306887981137") < 1e-30);
  auto w = lerch_zeta(0.01, Real(0.5), {2.0, 0.0}, 128);
  CHECK(dist(w, "4.843890876636007839714648183872436385547", "0.1717421838230867032310761401476872196213") < 1e-30);
  CHECK_THROWS_AS(lerch_zeta(0.3, inv_pi, {1.0, 2.0}, 64), RegimeError);
}

TEST_CASE("fast evaluators agree with the multiprecision ones") {
  PrecisionScope scope(128);
  Real inv_pi = 1 / pi_real();
  for (cplx s : {cplx(1.1, 0.3), cplx(1.3, 250.0), cplx(2.0, -1000.0), cplx(0.5, 14.0)}) {
    auto fast = hurwitz_zeta_fast(s, 1 / std::numbers::pi);
    auto ref = hurwitz_zeta(s, inv_pi, 96);
    CHECK(std::abs(fast.value - ref.to_complex()) <= fast.err + 1e-14);
    CHECK(fast.err < 1e-10);
  }
  for (cplx s : {cplx(1.2, 0.5), cplx(1.5, 80.0)}) {
    auto fast = lerch_zeta_fast(0.5, 1 / std::numbers::pi, s);
    auto ref = lerch_zeta(0.5, inv_pi, s, 96);
    CHECK(std::abs(fast.value - ref.to_complex()) <= fast.err + 1e-14);
  }
}

TEST_CASE("character_table: q=3 by brute force over multiplicative unit maps") {
  CharacterSet set = character_table(3);
  REQUIRE(set.size() == 2);
  CHECK(set[0].is_principal());
  // (Z/3)^* = {1,2} with 2^2 = 1, so chi(2) = +-1; the non-principal one is -1.
  CHECK(std::abs(set[1](2) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(set[1].angle(2) * 2 == set[1].order());
  CHECK(set[1](3) == cplx(0.0, 0.0));
}

TEST_CASE("character_table: invariants for q up to 40") {
  for (std::int64_t q = 1; q <= 40; ++q) {
    CharacterSet set = character_table(q);
    CHECK(set.phi() == euler_phi(q));
    std::set<std::string> keys;
    for (const auto& chi : set.characters()) {
      for (std::int64_t a = 0; a < q; ++a) {
        if (gcd64(a, q) != 1) {
          CHECK(chi(a) == cplx(0.0, 0.0));
          continue;
        }
        CHECK(std::abs(std::abs(chi(a)) - 1.0) < 1e-15);
        for (std::int64_t b = 0; b < q; ++b) {
          if (gcd64(b, q) != 1) continue;
          // complete multiplicativity, exactly in the angle representation
          CHECK((chi.angle(a) + chi.angle(b)) % chi.order() == chi.angle(a * b));
        }
      }
    }
    // orthogonality: sum over chi of chi(a) is phi(q) at a = 1 and 0 at other units
    for (std::int64_t a = 1; a < std::max<std::int64_t>(q, 2); ++a) {
      if (gcd64(a, q) != 1) continue;
      auto sum = character_sum(set, a, 128);
      double expected = (a % q == 1 % q) ? double(set.phi()) : 0.0;
      CHECK(std::abs(sum.to_complex() - cplx(expected, 0.0)) < 1e-30 + 1e-30 * expected);
    }
  }
  auto four = character_table(4);
  CHECK(std::abs(character_sum(four, 3, 128).to_complex()) < 1e-30);
}

TEST_CASE("character equivalence: characters inducing the same primitive character share a key") {
  CharacterSet six = character_table(6);
  CharacterSet three = character_table(3);
  // the non-principal character mod 6 is induced by the one mod 3
  int matches = 0;
  for (auto& c : six.characters()) {
    if (!c.is_principal()) {
      CHECK(c.conductor() == 3);
      CHECK(c.equivalent_to(three[1]));
      ++matches;
    }
  }
  CHECK(matches == 1);
  CHECK(six.principal().equivalent_to(character_table(1)[0]));
  Character aux = auxiliary_character({character_table(1)[0]});
  CHECK(aux.modulus() == 3);
  CHECK(auxiliary_character({three[1]}).modulus() == 1);
  CHECK_THROWS_AS(character_table(0), DomainError);
}

TEST_CASE("dirichlet_L: principal mod 1 is zeta, non-principal mod 4 is Catalan") {
  auto trivial = character_table(1)[0];
  auto L = dirichlet_L(PrecisionComplex::exact({2.0, 0.0}, 128), trivial, 128);
  CHECK(dist(L, "1.644934066848226436472415166646025189219") <= L.err_abs() + 1e-37);
  auto chi4 = character_table(4)[1];
  auto G = dirichlet_L(PrecisionComplex::exact({2.0, 0.0}, 128), chi4, 128);
  CHECK(dist(G, "0.9159655941772190150546035149323841107742") <= G.err_abs() + 1e-37);
  // alternating-series oracle sum (-1)^k/(2k+1)^2
  long double s = 0;
  for (int k = 0; k < 100000; ++k) s += (k % 2 ? -1.0L : 1.0L) / ((long double)(2 * k + 1) * (2 * k + 1));
  CHECK(std::abs(G.to_complex().real() - double(s)) < 1.0 / (200001.0 * 200001.0));
  CHECK_THROWS_AS(dirichlet_L(PrecisionComplex::exact({1.0, 3.0}, 64), chi4, 64), RegimeError);
}

TEST_CASE("log_L_euler: exp of the truncated Euler product matches L(3, chi)") {
  auto chi4 = character_table(4)[1];
  auto s = PrecisionComplex::exact({3.0, 0.0}, 96);
  auto logL = log_L_euler(s, chi4, 100000, 96);
  auto L = dirichlet_L(s, chi4, 96);
  PrecisionScope scope(96);
  MpComplex e = exp(logL.value());
  CHECK(abs(e - L.value()).convert_to<double>() < 1e-8);
  // stated tail bound sum_{p>1e5} 2 p^{-3}
  CHECK(logL.err_abs() <= 2.0 * std::pow(1e5, -2.0) / 2.0 + 1e-20);
}

TEST_CASE("hurwitz_char_decomposition matches direct evaluation") {
  auto s2 = PrecisionComplex::exact({2.0, 0.0}, 128);
  auto d = hurwitz_char_decomposition(s2, 2, 3, 128);
  PrecisionScope scope(128);
  auto direct = hurwitz_zeta(s2, Real(Real(2) / 3), 128);
  CHECK(abs_diff(d.value, direct) < 1e-20);
  CHECK_FALSE(d.orthogonality_gap);
  CHECK(dist(d.value, "3.063875409358717409987317233275685153233") < 1e-30);

  auto s3 = PrecisionComplex::exact({3.0, 0.0}, 128);
  auto d2 = hurwitz_char_decomposition(s3, 1, 4, 128);
  CHECK(d2.orthogonality_gap);
  CHECK(dist(d2.value, "64.66386996876846016666898358942199494365") <= d2.value.err_abs() + 1e-30);

  auto d3 = hurwitz_char_decomposition(s2, 1, 2, 128);
  auto z2 = hurwitz_zeta(s2, Real(1), 128);
  PrecisionComplex three(MpComplex(Real(3), Real(0)), 0.0, 128);
  CHECK(within_combined_error(d3.value, three * z2));

  CHECK_THROWS_AS(hurwitz_char_decomposition(s2, 2, 4, 64), DomainError);
}

TEST_CASE("hurwitz_char_decomposition: all p coprime to q for q in {3,4,5,7}") {
  for (std::int64_t q : {3, 4, 5, 7}) {
    for (std::int64_t p = 1; p < q; ++p) {
      if (gcd64(p, q) != 1) continue;
      for (cplx s : {cplx(2.0, 0.0), cplx(2.0, 1.0)}) {
        auto sp = PrecisionComplex::exact(s, 128);
        auto d = hurwitz_char_decomposition(sp, p, q, 128);
        PrecisionScope scope(128);
        auto direct = hurwitz_zeta(sp, Real(Real(p) / q), 128);
        CHECK(within_combined_error(d.value, direct));
        CHECK(d.orthogonality_gap == (p == 1));
      }
    }
  }
}
