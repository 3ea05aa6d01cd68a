#include "zlab/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace zlab {

namespace {

// (u - 1 + e^{-u}) / u^2 = int_0^1 (1-v) e^{-uv} dv
cplx phi1(cplx u) {
  if (std::abs(u) < 0.05) {
    // sum_k (-u)^k / (k+2)!
    cplx term(0.5, 0.0), sum(0.0, 0.0);
    for (int k = 0; k < 10; ++k) {
      sum += term;
      term *= -u / double(k + 3);
    }
    return sum;
  }
  return (u - 1.0 + std::exp(-u)) / (u * u);
}

template <class F>
double gk(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 6, 1e-14);
}

}  // namespace

TargetFunction TargetFunction::polynomial(std::vector<cplx> coeffs) {
  TargetFunction t;
  t.kind_ = Kind::polynomial;
  t.coeffs_ = std::move(coeffs);
  t.label_ = "polynomial";
  return t;
}

TargetFunction TargetFunction::samples(std::vector<cplx> points, std::vector<cplx> values) {
  if (points.size() != values.size()) throw DomainError("sample table: point and value counts differ");
  for (cplx v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("sample table has a non-finite value");
  }
  TargetFunction t;
  t.kind_ = Kind::samples;
  t.points_ = std::move(points);
  t.values_ = std::move(values);
  t.label_ = "samples";
  return t;
}

TargetFunction TargetFunction::callable(std::function<cplx(cplx)> fn, std::string label) {
  TargetFunction t;
  t.kind_ = Kind::callable;
  t.fn_ = std::move(fn);
  t.label_ = std::move(label);
  return t;
}

cplx TargetFunction::operator()(cplx s) const {
  switch (kind_) {
    case Kind::polynomial: {
      cplx acc(0.0, 0.0);
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    case Kind::callable:
      return fn_(s);
    case Kind::samples:
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::abs(points_[i] - s) <= 1e-12 * (1.0 + std::abs(s))) return values_[i];
      }
      throw DomainError("sample-table target evaluated off its table");
  }
  return {};
}

std::vector<cplx> TargetFunction::on(const CompactRegion& K) const {
  std::vector<cplx> out;
  out.reserve(K.grid().size());
  for (cplx s : K.grid()) {
    cplx v = (*this)(s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("target is not finite on the grid");
    out.push_back(v);
  }
  return out;
}

KernelGrid::KernelGrid(double A, double B, std::vector<cplx> values) : A_(A), B_(B), values_(std::move(values)) {
  if (!(B > A) || !(A >= 0)) throw DomainError("kernel support needs 0 <= A < B");
  if (values_.size() < 2) throw DomainError("kernel grid needs M >= 1");
  for (cplx v : values_) bound_N_ = std::max(bound_N_, std::abs(v));
  cumulative_.assign(values_.size(), cplx(0.0, 0.0));
  const double h = step();
  for (std::size_t m = 1; m < values_.size(); ++m) {
    cumulative_[m] = cumulative_[m - 1] + 0.5 * h * (values_[m - 1] + values_[m]);
  }
}

cplx KernelGrid::at(double x) const {
  if (x < A_ || x > B_) return {0.0, 0.0};
  const double pos = (x - A_) / step();
  const int m = std::min(static_cast<int>(pos), M() - 1);
  const double w = pos - m;
  return (1.0 - w) * values_[m] + w * values_[m + 1];
}

cplx KernelGrid::integral_to(double y) const {
  if (y <= A_) return {0.0, 0.0};
  if (y >= B_) return cumulative_.back();
  const double h = step();
  const double pos = (y - A_) / h;
  const int m = std::min(static_cast<int>(pos), M() - 1);
  const double w = pos - m;
  // trapezoid on the partial panel is exact for the linear interpolant
  cplx gy = (1.0 - w) * values_[m] + w * values_[m + 1];
  return cumulative_[m] + 0.5 * w * h * (values_[m] + gy);
}

std::vector<cplx> hat_transform_weights(double A, double B, int M, cplx s) {
  const double h = (B - A) / M;
  const cplx u = s * h;
  const cplx right = h * phi1(u);
  const cplx left = h * phi1(-u);
  std::vector<cplx> w(M + 1);
  for (int m = 0; m <= M; ++m) {
    const double x = m == M ? B : A + m * h;
    cplx c(0.0, 0.0);
    if (m < M) c += right;
    if (m > 0) c += left;
    w[m] = std::exp(-s * x) * c;
  }
  return w;
}

cplx KernelGrid::transform(cplx s) const {
  auto w = hat_transform_weights(A_, B_, M(), s);
  cplx acc(0.0, 0.0);
  for (std::size_t m = 0; m < w.size(); ++m) acc += w[m] * values_[m];
  return acc;
}

FitResult fit_laplace(const TargetFunction& f, const CompactRegion& K, double eps, double A, double B, int M,
                      const FitOptions& options) {
  if (!(eps > 0)) throw DomainError("fit_laplace needs eps > 0");
  if (!(B > A) || !(A >= 0)) throw DomainError("fit_laplace needs 0 <= A < B");
  if (M < 1) throw DomainError("fit_laplace needs M >= 1");

  const auto& grid = K.grid();
  const std::vector<cplx> target = f.on(K);
  const int n = static_cast<int>(grid.size());
  const int p = M + 1;

  Eigen::MatrixXcd Phi(n, p);
  for (int i = 0; i < n; ++i) {
    auto w = hat_transform_weights(A, B, M, grid[i]);
    for (int m = 0; m < p; ++m) Phi(i, m) = w[m];
  }
  Eigen::VectorXcd y(n);
  for (int i = 0; i < n; ++i) y(i) = target[i];

  auto measure = [&](const KernelGrid& g) {
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(g.transform(grid[i]) - target[i]));
    return err;
  };

  if (y.norm() == 0.0) {
    KernelGrid zero(A, B, std::vector<cplx>(p, cplx(0.0, 0.0)));
    return {zero, 0.0, true, 0.0, "zero target"};
  }

  // Dual form: c = Phi^H (Phi Phi^H + lambda s I)^{-1} y, s = mean diagonal.
  const Eigen::MatrixXcd gram = Phi * Phi.adjoint();
  const double scale = gram.diagonal().real().mean();

  std::optional<FitResult> best;
  for (double lambda : options.ridge_ladder) {
    Eigen::MatrixXcd reg = gram;
    reg.diagonal().array() += lambda * scale;
    Eigen::VectorXcd z = reg.ldlt().solve(y);
    Eigen::VectorXcd c = Phi.adjoint() * z;
    std::vector<cplx> vals(p);
    bool finite = true;
    for (int m = 0; m < p; ++m) {
      vals[m] = c(m);
      finite = finite && std::isfinite(vals[m].real()) && std::isfinite(vals[m].imag());
    }
    if (!finite) continue;
    KernelGrid g(A, B, std::move(vals));
    const double err = measure(g);
    if (!best || err < best->achieved_sup_error) best = FitResult{g, err, err < eps, lambda, ""};
    // Larger ridge keeps |g| small; stop at the first comfortable fit.
    if (err < 0.5 * eps) break;
  }
  if (!best) {
    KernelGrid zero(A, B, std::vector<cplx>(p, cplx(0.0, 0.0)));
    const double err = measure(zero);
    best = FitResult{zero, err, err < eps, 0.0, ""};
  }
  best->message = best->success ? "fit below eps" : "residual above eps after the full ridge ladder";
  return *best;
}

FitResult fit_laplace_or_throw(const TargetFunction& f, const CompactRegion& K, double eps, double A, double B,
                               int M, const FitOptions& options) {
  FitResult r = fit_laplace(f, K, eps, A, B, M, options);
  if (!r.success) {
    throw InfeasibleError("laplace fit infeasible: best sup error " + std::to_string(r.achieved_sup_error) +
                              " >= eps " + std::to_string(eps),
                          "eps", r.achieved_sup_error);
  }
  return r;
}

PrecisionComplex riemann_sum_transform(const KernelGrid& g, const PrecisionComplex& s_in) {
  const cplx s = s_in.to_complex();
  const double h = g.step();
  cplx acc(0.0, 0.0);
  double mag = 0.0;
  for (int m = 1; m <= g.M(); ++m) {
    cplx term = g.values()[m] * std::exp(-s * g.node(m)) * h;
    acc += term;
    mag += std::abs(term);
  }
  // double evaluation; the rounding allowance covers M accumulated terms
  double err = 4.0 * (g.M() + 8) * std::numeric_limits<double>::epsilon() * mag;
  if (s_in.err_abs() > 0) {
    // |d/ds| of the sum is at most sum x_m |term_m|
    double deriv = 0.0;
    for (int m = 1; m <= g.M(); ++m) {
      deriv += g.node(m) * std::abs(g.values()[m]) * std::exp(-s.real() * g.node(m)) * h;
    }
    err += deriv * s_in.err_abs() * std::exp(g.B() * s_in.err_abs());
  }
  return PrecisionComplex(MpComplex::from(acc), err, 53);
}

RiemannDiscrepancy riemann_discrepancy(const KernelGrid& g, cplx s) {
  RiemannDiscrepancy out{};
  out.riemann = riemann_sum_transform(g, PrecisionComplex::exact(s, 53)).to_complex();
  out.closed_form = g.transform(s);
  double re = 0.0, im = 0.0;
  const double h = g.step();
  for (int m = 0; m < g.M(); ++m) {
    const double a = g.node(m), b = g.node(m + 1);
    auto integrand = [&](double x) { return g.at(x) * std::exp(-s * x); };
    re += gk([&](double x) { return integrand(x).real(); }, a, b);
    im += gk([&](double x) { return integrand(x).imag(); }, a, b);
  }
  out.quadrature = {re, im};
  out.discrepancy = std::abs(out.riemann - out.quadrature);
  out.quadrature_error = std::abs(out.quadrature - out.closed_form);
  double osc = 0.0;
  cplx prev = g.values()[0] * std::exp(-s * g.node(0));
  for (int m = 1; m <= g.M(); ++m) {
    cplx cur = g.values()[m] * std::exp(-s * g.node(m));
    osc += std::abs(cur - prev);
    prev = cur;
  }
  out.oscillation_bound = h * osc;
  return out;
}

LogShiftResult log_shift_target(const TargetFunction& f, cplx C, const CompactRegion& K) {
  const auto vals = f.on(K);
  const double maxf = sup_norm(vals);
  if (!(std::abs(C) > maxf)) {
    throw PreconditionError("log_shift_target needs |C| > max_K |f| so that |f/C| < 1 (got |C| = " +
                            std::to_string(std::abs(C)) + ", max |f| = " + std::to_string(maxf) + ")");
  }
  LogShiftResult out;
  for (cplx v : vals) {
    const cplx r = v / C;
    out.max_ratio = std::max(out.max_ratio, std::abs(r));
    out.max_remainder = std::max(out.max_remainder, std::abs(r + std::log(1.0 - r)));
  }
  // + 0.0 turns a negative zero into +0 so that log(-C) = i pi for real C > 0
  const cplx logmc = std::log(cplx(-C.real() + 0.0, -C.imag() + 0.0));
  out.target = TargetFunction::callable(
      [f, C, logmc](cplx s) { return logmc + std::log(1.0 - f(s) / C); }, "log_shift(" + f.label() + ")");
  out.target.shift = C;
  return out;
}

}  // namespace zlab
