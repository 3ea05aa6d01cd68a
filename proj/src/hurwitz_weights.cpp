#include "zlab/hurwitz_weights.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "zlab/zeta.hpp"

namespace zlab {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

double wrap(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

double circular_distance(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, 1.0 - d);
}

// int_a^b g(x) e^{-sx} dx for the piecewise-linear kernel, split at its nodes.
cplx partial_transform(const KernelGrid& g, double a, double b, cplx s) {
  a = std::max(a, g.A());
  b = std::min(b, g.B());
  cplx total = 0.0;
  if (!(b > a)) return total;
  auto f = [&](double x) { return g.at(x) * std::exp(-s * x); };
  int m = static_cast<int>(std::floor((a - g.A()) / g.step()));
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, g.node(std::min(m + 1, g.M())));
    if (hi > lo) total += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
    lo = hi;
    if (++m >= g.M()) {
      if (b > lo) total += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, b);
      break;
    }
  }
  return total;
}

// e(lambda n) phase in turns, exact for integer and half-integer lambda.
double phase_turns(double lambda, std::int64_t n) {
  const long double v = static_cast<long double>(lambda) * static_cast<long double>(n);
  return wrap(static_cast<double>(v - std::floor(v)));
}

HurwitzResult build(const TargetFunction& f, const CompactRegion& K, const AlphaDescriptor& alpha, double lambda,
                    double delta, double B, OmegaMode mode, const HurwitzConfig& cfg, const char* pipeline) {
  if (!alpha.irrational()) {
    throw DomainError("alpha = " + alpha.label + " is rational; use the character decomposition pipeline");
  }
  if (!(alpha.approx > 0)) throw DomainError("weights need alpha > 0");
  if (!(delta > 0) || !(B > 0)) throw DomainError("delta and B must be positive");
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  const bool algebraic_alpha = alpha.kind == AlphaDescriptor::Kind::algebraic;
  if (mode == OmegaMode::automatic) mode = algebraic_alpha ? OmegaMode::algebraic : OmegaMode::transcendental;
  if (mode == OmegaMode::algebraic && !algebraic_alpha) {
    throw DomainError("algebraic mode needs a minimal polynomial for alpha");
  }
  if (mode == OmegaMode::transcendental && algebraic_alpha) {
    throw DomainError("alpha = " + alpha.label + " is algebraic; the alternating tail needs transcendental alpha");
  }
  if (delta > cfg.delta_max) {
    throw InfeasibleError("delta above the configured maximum", "delta_max", cfg.delta_max);
  }
  const double log_budget = std::log(cfg.index_budget);
  if (B / delta > log_budget) {
    throw InfeasibleError("N = exp(B/delta) exceeds the index budget", "delta", B / log_budget);
  }
  if (mode == OmegaMode::algebraic && !(K.min_re() > 0)) {
    throw PreconditionError("algebraic mode needs min Re(s) > 0 on K for the tail bound");
  }

  HurwitzResult out;
  out.mode = mode;
  out.lambda = lambda;
  out.delta = delta;
  out.B = B;
  out.alpha = alpha.value_double();
  out.N = static_cast<std::int64_t>(std::floor(std::exp(B / delta) * (1 + 1e-12)));
  out.N1 = static_cast<std::int64_t>(std::ceil(std::exp(1 / std::sqrt(delta)) * (1 - 1e-12)));
  const double eps3 = cfg.eps / 3;
  const double eps2 = cfg.eps2 > 0 ? cfg.eps2 : eps3;

  ApproximationReport& rep = out.report;
  rep.pipeline = pipeline;
  rep.eps = cfg.eps;
  rep.param("alpha", alpha.describe());
  rep.param("mode", to_string(mode));
  rep.param("lambda", lambda);
  rep.param("delta", delta);
  rep.param("B", B);
  rep.param("N", double(out.N));
  rep.param("N1", double(out.N1));

  FitResult fit = fit_laplace(f, K, eps3, 0.0, B, cfg.fit_M, cfg.fit);
  if (!fit.success) {
    throw PreconditionError("Laplace fit on [0, B] missed eps/3: sup error " + std::to_string(fit.achieved_sup_error));
  }
  out.kernel = fit.kernel;
  const KernelGrid& g = out.kernel;
  rep.stage("ii", fit.achieved_sup_error, eps3, "Laplace fit on the K-grid");

  out.membership = cassels_set(alpha, out.N, 0.5, cfg.cassels);
  if (alpha.kind == AlphaDescriptor::Kind::numeric) {
    rep.notes.push_back("numeric alpha treated as transcendental; " + out.membership.notes.front());
  }

  // The recursion.
  const long double a0 = out.alpha;
  const std::int64_t N = out.N;
  std::vector<double> log_a(N + 1);
  std::vector<cplx> c(N + 1);
  std::vector<Real> t_precise;  // omega angles, needed exactly for forced indices
  const int bits = 192;
  PrecisionScope scope(bits);
  t_precise.reserve(N + 1);
  out.weights.alpha_descriptor = alpha.describe();
  std::complex<long double> S = 0;
  for (std::int64_t n = 0; n <= N; ++n) {
    const long double a = a0 + n;
    log_a[n] = static_cast<double>(std::log(a));
    const double phase = phase_turns(lambda, n);
    const std::complex<long double> bracket = std::complex<long double>(g.integral_to(delta * log_a[n])) - S;
    const double theta = bracket == std::complex<long double>(0) ? 0.0 : wrap(double(std::arg(bracket)) / two_pi);
    const double want = wrap(theta - phase);

    const CasselsEntry& entry = out.membership.membership[n];
    double t;
    if (n == 0) {
      t = 0.0;
      out.weights.set(0, 0.0, "anchor");
      t_precise.emplace_back(0);
    } else if (entry.in_A) {
      t = want;
      out.weights.set(n, t, "recursion");
      t_precise.emplace_back(t);
    } else {
      const RelationCertificate& cert = out.membership.certificates[entry.certificate];
      const std::int64_t bn = cert.coefficient(n);
      Real rest = 0;
      for (auto [k, bk] : cert.b) {
        if (k != n) rest += Real(bk) * t_precise[k];
      }
      // omega(n+alpha)^{b_n} is fixed; pick the b_n-th root nearest the recursion
      Real best = 0;
      double best_dist = 2.0;
      for (std::int64_t j = 0; j < std::abs(bn); ++j) {
        Real cand = (Real(j) - rest) / Real(bn);
        cand -= floor(cand);
        const double d = circular_distance(cand.convert_to<double>(), want);
        if (d < best_dist) {
          best_dist = d;
          best = cand;
        }
      }
      out.weights.set_precise(n, best, "relation");
      t = out.weights.turns(n);
      t_precise.push_back(best);
    }
    const double ct = wrap(t + phase);
    c[n] = std::polar(1.0, two_pi * ct);
    S += std::complex<long double>(c[n]) / a;
  }

  // Multiplicativity: every certificate used, plus an independent small search.
  std::vector<RelationCertificate> checks = out.membership.certificates;
  if (algebraic_alpha) {
    RelationSearch rs = detect_relations(alpha, std::min(N, cfg.check_N), cfg.check_height);
    checks.insert(checks.end(), rs.certificates.begin(), rs.certificates.end());
  }
  for (const auto& cert : checks) {
    Real sum = 0;
    for (auto [k, bk] : cert.b) sum += Real(bk) * t_precise[k];
    sum -= round(sum);
    const double defect = 2 * std::abs(std::sin(std::numbers::pi * sum.convert_to<double>()));
    out.multiplicativity_defect = std::max(out.multiplicativity_defect, defect);
  }
  out.weights.certificates = out.membership.certificates;
  if (out.multiplicativity_defect > cfg.consistency_tol) {
    throw Error("relation_consistency", "weights violate a relation certificate by " +
                                            std::to_string(out.multiplicativity_defect) +
                                            "; raise the working precision");
  }
  rep.stage("multiplicativity", out.multiplicativity_defect, cfg.consistency_tol,
            std::to_string(checks.size()) + " certificates");

  // Partial-sum tracking against int g, at both sides of every breakpoint.
  const double root = std::sqrt(delta);
  const cplx G0 = g.integral_to(root);
  double iii = 0.0;
  {
    std::complex<long double> D = 0;
    for (std::int64_t n = out.N1; n <= N && delta * std::log(double(n)) < B; ++n) {
      const cplx G = g.integral_to(delta * std::log(double(n))) - G0;
      iii = std::max(iii, std::abs(cplx(D) - G));
      D += std::complex<long double>(c[n]) / (a0 + n);
      iii = std::max(iii, std::abs(cplx(D) - G));
    }
  }
  rep.stage("iii", iii, eps2, "sup over X in [sqrt(delta), B]");

  double h1 = 0.0, iv = 0.0, final_err = 0.0;
  out.target_on_grid = f.on(K);
  for (std::size_t i = 0; i < K.grid().size(); ++i) {
    const cplx s = K.grid()[i];
    const cplx z = 1.0 + delta * s;
    std::complex<long double> head = 0, middle = 0, total = 0;
    for (std::int64_t n = 0; n <= N; ++n) {
      const std::complex<long double> term = std::complex<long double>(c[n] * std::exp(-z * log_a[n]));
      if (n < out.N1) head += term;
      else if (n < N) middle += term;
      total += term;
    }
    out.sum_on_grid.push_back(cplx(total));
    h1 = std::max(h1, std::abs(cplx(head)));
    iv = std::max(iv, std::abs(cplx(middle) - partial_transform(g, root, B, s)));
    final_err = std::max(final_err, std::abs(cplx(total) - out.target_on_grid[i]));
  }
  rep.stage("h1", h1, eps3, "n < exp(delta^{-1/2})");
  rep.stage("iv", iv, eps3, "N1 <= n < N against int_{sqrt(delta)}^B g e^{-sx}");

  const double beta = out.alpha + double(N + 1);
  if (mode == OmegaMode::algebraic) {
    const double xi = K.min_re();
    const double tail = hurwitz_zeta_fast(cplx(1 + delta * xi, 0.0), beta).value.real();
    rep.stage("tra2", tail, eps3, "sum_{k>N} (k+alpha)^{-1-delta min Re s}");
  } else if (K.min_re() > 0) {
    double tail = 0.0;
    for (const cplx s : K.grid()) {
      tail = std::max(tail, std::abs(lerch_zeta_fast(lambda + 0.5, beta, 1.0 + delta * s).value));
    }
    rep.stage("tra4", tail, eps3, "alternating tail omega = (-1)^n beyond N");
  } else {
    rep.notes.push_back("alternating tail not evaluated: min Re(s) <= 0 on K");
  }

  rep.stage("final", final_err, cfg.eps, "sum_{n<=N} against f on the K-grid");
  rep.final_error = final_err;
  rep.success = final_err < cfg.eps;
  return out;
}

}  // namespace

cplx HurwitzResult::combined(std::int64_t n) const {
  return std::polar(1.0, two_pi * wrap(weights.turns(n) + phase_turns(lambda, n)));
}

const char* to_string(OmegaMode mode) {
  switch (mode) {
    case OmegaMode::automatic: return "automatic";
    case OmegaMode::algebraic: return "algebraic";
    case OmegaMode::transcendental: return "transcendental";
  }
  return "?";
}

HurwitzResult build_omega_hurwitz(const TargetFunction& f, const CompactRegion& K, const AlphaDescriptor& alpha,
                                  double delta, double B, OmegaMode mode, const HurwitzConfig& config) {
  return build(f, K, alpha, 0.0, delta, B, mode, config, "hurwitz");
}

HurwitzResult build_omega_lerch(const TargetFunction& f, const CompactRegion& K, const AlphaDescriptor& alpha,
                                double lambda, double delta, double B, const HurwitzConfig& config) {
  return build(f, K, alpha, lambda, delta, B, OmegaMode::automatic, config, "lerch");
}

}  // namespace zlab
