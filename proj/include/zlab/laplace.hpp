#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "zlab/precision.hpp"
#include "zlab/region.hpp"

namespace zlab {

// Target f on K. Polynomial targets and callables can be evaluated anywhere;
// a sample table only at its own points.
class TargetFunction {
 public:
  enum class Kind { polynomial, samples, callable };

  TargetFunction() = default;  // the zero polynomial
  static TargetFunction polynomial(std::vector<cplx> coeffs);  // ascending powers
  static TargetFunction samples(std::vector<cplx> points, std::vector<cplx> values);
  static TargetFunction callable(std::function<cplx(cplx)> fn, std::string label);
  static TargetFunction zero() { return polynomial({}); }

  Kind kind() const { return kind_; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  const std::string& label() const { return label_; }

  cplx operator()(cplx s) const;
  std::vector<cplx> on(const CompactRegion& K) const;

  // Additive constant carried alongside the target (C_k of the prime
  // pipelines); not applied by operator().
  cplx shift{0.0, 0.0};
  double continuity_hint = 0.0;

 private:
  Kind kind_ = Kind::polynomial;
  std::vector<cplx> coeffs_;
  std::vector<cplx> points_;
  std::vector<cplx> values_;
  std::function<cplx(cplx)> fn_;
  std::string label_;
};

// g sampled at M+1 equispaced nodes on [A, B], read as its piecewise-linear
// interpolant.
class KernelGrid {
 public:
  KernelGrid(double A, double B, std::vector<cplx> values);

  double A() const { return A_; }
  double B() const { return B_; }
  int M() const { return static_cast<int>(values_.size()) - 1; }
  double step() const { return (B_ - A_) / M(); }
  double node(int m) const { return m == M() ? B_ : A_ + m * step(); }
  const std::vector<cplx>& values() const { return values_; }
  double bound_N() const { return bound_N_; }

  cplx at(double x) const;  // interpolant, zero outside [A, B]

  // Exact int_A^B g(x) e^{-sx} dx of the interpolant.
  cplx transform(cplx s) const;
  // Exact int_A^y g(x) dx of the interpolant, y clamped to [A, B].
  cplx integral_to(double y) const;

 private:
  double A_;
  double B_;
  std::vector<cplx> values_;
  std::vector<cplx> cumulative_;
  double bound_N_ = 0.0;
};

// Per-node weights w_m(s) with transform(s) = sum_m w_m(s) g_m.
std::vector<cplx> hat_transform_weights(double A, double B, int M, cplx s);

struct FitOptions {
  std::vector<double> ridge_ladder = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14};
};

struct FitResult {
  KernelGrid kernel;
  double achieved_sup_error;
  bool success;
  double ridge;
  std::string message;
};

// Ridge least squares on the K-grid for a kernel g on [A, B] with M panels.
// success is set iff the measured sup error is below eps.
FitResult fit_laplace(const TargetFunction& f, const CompactRegion& K, double eps, double A, double B, int M,
                      const FitOptions& options = {});

// As fit_laplace but throws InfeasibleError carrying the best error on failure.
FitResult fit_laplace_or_throw(const TargetFunction& f, const CompactRegion& K, double eps, double A, double B,
                               int M, const FitOptions& options = {});

// sum_{m=1}^M g(x_m) e^{-s x_m} (B-A)/M.
PrecisionComplex riemann_sum_transform(const KernelGrid& g, const PrecisionComplex& s);

struct RiemannDiscrepancy {
  cplx riemann;
  cplx quadrature;  // adaptive Gauss-Kronrod on each panel
  cplx closed_form;
  double discrepancy;          // |riemann - quadrature|
  double quadrature_error;     // |quadrature - closed_form|
  double oscillation_bound;    // h * sum_m |phi(x_m) - phi(x_{m-1})|, phi = g e^{-sx}
};

RiemannDiscrepancy riemann_discrepancy(const KernelGrid& g, cplx s);

struct LogShiftResult {
  TargetFunction target;     // s -> log(-C) + log(1 - f(s)/C)
  double max_remainder = 0;  // max over the grid of |f/C + log(1 - f/C)|
  double max_ratio = 0;      // max over the grid of |f/C|
};

LogShiftResult log_shift_target(const TargetFunction& f, cplx C, const CompactRegion& K);

}  // namespace zlab
