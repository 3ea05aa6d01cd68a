#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "zlab/laplace.hpp"

using namespace zlab;

namespace {

KernelGrid sample_kernel(double A, double B, int M, cplx (*g)(double)) {
  std::vector<cplx> v(M + 1);
  for (int m = 0; m <= M; ++m) v[m] = g(m == M ? B : A + m * (B - A) / M);
  return KernelGrid(A, B, v);
}

cplx exp_minus(double x) { return std::exp(-x); }

}  // namespace

TEST_CASE("fit_laplace: zero target gives the zero kernel") {
  auto K = CompactRegion::disc({1.0, 0.0}, 0.5);
  auto r = fit_laplace(TargetFunction::zero(), K, 1e-6, 0.0, 40.0, 400);
  CHECK(r.success);
  CHECK(r.achieved_sup_error == 0.0);
  CHECK(r.kernel.bound_N() == 0.0);
}

TEST_CASE("hat weights integrate the interpolant exactly") {
  // a linear g is its own interpolant, so the transform has a closed form
  KernelGrid g(0.0, 2.0, {cplx(0.0), cplx(1.0), cplx(2.0), cplx(3.0), cplx(4.0)});
  for (cplx s : {cplx(1.0, 0.0), cplx(0.5, 2.0), cplx(0.05, 0.0)}) {
    // int_0^2 2x e^{-sx} dx
    cplx exact = 2.0 * (1.0 - std::exp(-2.0 * s) * (1.0 + 2.0 * s)) / (s * s);
    CHECK(std::abs(g.transform(s) - exact) < 1e-12 * std::max(1.0, std::abs(exact)));
  }
  CHECK(std::abs(g.integral_to(1.0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(g.integral_to(1.25) - cplx(1.5625)) < 1e-15);
}

TEST_CASE("Laplace pair 1/(s+1) <-> e^{-x}: truncation plus interpolation bound") {
  auto K = CompactRegion::disc({1.0, 0.0}, 0.5);
  const double sigma = K.min_re();
  for (int M : {1000, 4000}) {
    KernelGrid g = sample_kernel(0.0, 30.0, M, exp_minus);
    const double h = 30.0 / M;
    const double bound = std::exp(-30.0 * (1.0 + sigma)) / (1.0 + sigma) + h * h / (8.0 * (1.0 + sigma));
    double err = 0.0;
    for (cplx s : K.grid()) err = std::max(err, std::abs(g.transform(s) - 1.0 / (s + 1.0)));
    CHECK(err <= bound);
  }
  auto r = fit_laplace(TargetFunction::callable([](cplx s) { return 1.0 / (s + 1.0); }, "1/(s+1)"), K, 1e-6, 0.0,
                       30.0, 400);
  CHECK(r.success);
  CHECK(r.achieved_sup_error < 1e-6);
}

TEST_CASE("fit_laplace: f(s)=s on the disc |s-1|<=1/2 with B=40, M=400") {
  auto K = CompactRegion::disc({1.0, 0.0}, 0.5);
  auto r = fit_laplace(TargetFunction::polynomial({0.0, 1.0}), K, 1e-2, 0.0, 40.0, 400);
  CHECK(r.success);
  CHECK(r.achieved_sup_error < 1e-2);
  // the reported error is the one a fresh evaluation measures
  double err = 0.0;
  for (cplx s : K.grid()) err = std::max(err, std::abs(r.kernel.transform(s) - s));
  CHECK(err == doctest::Approx(r.achieved_sup_error).epsilon(1e-12));
  for (cplx v : r.kernel.values()) CHECK(std::abs(v) <= r.kernel.bound_N());
}

TEST_CASE("fit_laplace never reports success at or above eps") {
  auto K = CompactRegion::disc({1.0, 0.0}, 0.5);
  // s^5 on a short support: small eps is out of reach
  auto f = TargetFunction::polynomial({0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  for (double eps : {1e-1, 1e-4, 1e-9}) {
    auto r = fit_laplace(f, K, eps, 0.0, 10.0, 40);
    CHECK(r.success == (r.achieved_sup_error < eps));
  }
  CHECK_THROWS_AS(fit_laplace_or_throw(f, K, 1e-15, 0.0, 10.0, 40), InfeasibleError);
  CHECK_THROWS_AS(fit_laplace(f, K, 0.0, 0.0, 10.0, 40), DomainError);
  CHECK_THROWS_AS(fit_laplace(f, K, 1e-3, 5.0, 1.0, 40), DomainError);
}

TEST_CASE("riemann_sum_transform: zero kernel and the e^{-x} example") {
  KernelGrid zero(0.0, 1.0, std::vector<cplx>(11, cplx(0.0)));
  CHECK(riemann_sum_transform(zero, PrecisionComplex::exact({1.0, 0.0}, 53)).to_complex() == cplx(0.0));

  KernelGrid g = sample_kernel(0.0, 30.0, 10000, exp_minus);
  auto d = riemann_discrepancy(g, {1.0, 0.0});
  // The right-endpoint sum is h e^{-2h}(1-e^{-60})/(1-e^{-2h}) in closed form.
  const double h = 0.003;
  const double closed = h * std::exp(-2 * h) * (1 - std::exp(-60.0)) / (1 - std::exp(-2 * h));
  CHECK(std::abs(d.riemann.real() - closed) < 1e-13);
  // The integral of the interpolant is within h^2/24 of (1-e^{-60})/2.
  CHECK(std::abs(d.quadrature.real() - 0.5) < h * h / 12);
  CHECK(d.quadrature_error < 1e-12);
  // Measured discrepancy: about h/2, i.e. 1.4993e-3 (not below 1e-3 at this M).
  CHECK(d.discrepancy == doctest::Approx(0.5 - closed).epsilon(1e-6));
  CHECK(d.discrepancy == doctest::Approx(1.4993e-3).epsilon(1e-4));
  CHECK(d.discrepancy <= d.oscillation_bound);
}

TEST_CASE("riemann_sum_transform: refinement M -> 2M stays within the oscillation bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.5, 1.5), im(-5.0, 5.0);
  auto g_fn = [](double x) { return cplx(std::cos(x), std::sin(2 * x)) * std::exp(-0.3 * x); };
  std::vector<double> medians;
  for (int M : {100, 200, 400, 800, 1600}) {
    std::vector<cplx> v(M + 1);
    for (int m = 0; m <= M; ++m) v[m] = g_fn(10.0 * m / M);
    KernelGrid g(0.0, 10.0, v);
    std::vector<cplx> v2(2 * M + 1);
    for (int m = 0; m <= 2 * M; ++m) v2[m] = g_fn(10.0 * m / (2 * M));
    KernelGrid g2(0.0, 10.0, v2);
    std::vector<double> ds;
    rng.seed(11);
    for (int i = 0; i < 9; ++i) {
      cplx s(re(rng), im(rng));
      auto a = riemann_discrepancy(g, s);
      auto b = riemann_discrepancy(g2, s);
      CHECK(b.discrepancy <= a.discrepancy + a.oscillation_bound);
      ds.push_back(a.discrepancy);
    }
    std::nth_element(ds.begin(), ds.begin() + 4, ds.end());
    medians.push_back(ds[4]);
  }
  for (std::size_t i = 1; i < medians.size(); ++i) CHECK(medians[i] < medians[i - 1]);
}

TEST_CASE("log_shift_target: constants, principal branches, and the size inequality") {
  auto K = CompactRegion::disc({1.0, 0.0}, 0.5);
  auto z = log_shift_target(TargetFunction::zero(), {3.0, 1.0}, K);
  CHECK(std::abs(z.target({1.2, 0.1}) - std::log(cplx(-3.0, -1.0))) < 1e-15);

  auto one = log_shift_target(TargetFunction::polynomial({1.0}), {10.0, 0.0}, K);
  cplx expect = std::log(cplx(-10.0, 0.0)) + std::log(0.9);
  CHECK(std::abs(one.target({1.0, 0.0}) - expect) < 1e-15);
  CHECK(one.target({1.0, 0.0}).imag() == doctest::Approx(M_PI));

  const double eps1 = 0.1;
  const cplx C = 1.0 + 1.5 * (4.0 / eps1);
  auto f = TargetFunction::polynomial({0.0, 1.0});
  auto r = log_shift_target(f, C, K);
  CHECK(r.max_remainder < eps1 / (3.0 * std::abs(C)));
  for (cplx s : K.grid()) {
    // round trip exp(log_shift) = f - C
    CHECK(std::abs(std::exp(r.target(s)) - (f(s) - C)) < 1e-12 * std::abs(C));
  }
  CHECK(r.target.shift == C);
  CHECK_THROWS_AS(log_shift_target(f, {1.2, 0.0}, K), PreconditionError);
}

TEST_CASE("TargetFunction: sample tables evaluate only on their own points") {
  auto K = CompactRegion::rectangle({0.5, -1.0}, {1.5, 1.0}, 16, 16);
  std::vector<cplx> vals;
  for (cplx s : K.grid()) vals.push_back(s * s);
  auto t = TargetFunction::samples(K.grid(), vals);
  auto back = t.on(K);
  for (std::size_t i = 0; i < vals.size(); ++i) CHECK(back[i] == vals[i]);
  CHECK_THROWS_AS(t({7.0, 7.0}), DomainError);
}
