#include "zlab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "zlab/lattice.hpp"
#include "zlab/zeta.hpp"

namespace zlab {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

void validate(const ShiftProblem& p) {
  if (p.generators.empty() || p.generators.size() != p.targets.size()) {
    throw DomainError("shift problem needs one target per generator");
  }
  if (!(p.eps > 0) || !(p.T_max > 0)) throw DomainError("shift problem needs eps > 0 and T_max > 0");
  for (std::size_t j = 0; j < p.generators.size(); ++j) {
    if (!(p.generators[j] > 1)) throw DomainError("shift generators must exceed 1");
    if (std::abs(std::abs(p.targets[j]) - 1.0) > 1e-12) throw DomainError("shift targets must have modulus 1");
    for (std::size_t i = 0; i < j; ++i) {
      if (p.generators[i] == p.generators[j]) throw DomainError("shift generators must be distinct");
    }
  }
}

struct Phases {
  std::vector<double> ell;    // log x_j / 2 pi
  std::vector<double> theta;  // arg omega_j / 2 pi
  double max_log = 0.0;
};

Phases phases_of(const ShiftProblem& p) {
  Phases ph;
  for (std::size_t j = 0; j < p.generators.size(); ++j) {
    const double L = std::log(p.generators[j]);
    ph.ell.push_back(L / two_pi);
    ph.theta.push_back(std::arg(p.targets[j]) / two_pi);
    ph.max_log = std::max(ph.max_log, L);
  }
  return ph;
}

double defect_fast(const Phases& ph, double t) {
  double worst = 0.0;
  for (std::size_t j = 0; j < ph.ell.size(); ++j) {
    // x^{-it} / omega = e(-t ell - theta)
    long double phi = -static_cast<long double>(t) * ph.ell[j] - ph.theta[j];
    phi -= std::nearbyint(phi);
    worst = std::max(worst, 2 * std::abs(std::sin(std::numbers::pi * double(phi))));
  }
  return worst;
}

struct Refined {
  double t;
  double defect;
};

// Dense look around t0, then golden section on the best bracket.
Refined refine(const Phases& ph, double t0, double W, double T_max) {
  const double lo = std::max(0.0, t0 - W), hi = std::min(T_max, t0 + W);
  const int K = 32;
  Refined best{lo, defect_fast(ph, lo)};
  for (int i = 1; i <= K; ++i) {
    const double t = lo + (hi - lo) * i / K;
    const double d = defect_fast(ph, t);
    if (d < best.defect) best = {t, d};
  }
  double a = std::max(lo, best.t - (hi - lo) / K), b = std::min(hi, best.t + (hi - lo) / K);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = defect_fast(ph, c), fd = defect_fast(ph, d);
  for (int it = 0; it < 80 && b - a > 1e-13 * (1 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = defect_fast(ph, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = defect_fast(ph, d);
    }
  }
  const double t = fc < fd ? c : d;
  const double v = std::min(fc, fd);
  if (v < best.defect) best = {t, v};
  return best;
}

// Fincke-Pohst enumeration of all x with |sum x_i b_i - y|^2 <= R2.
class Enumerator {
 public:
  Enumerator(const std::vector<std::vector<long double>>& b, const std::vector<long double>& y, long double R2,
             std::int64_t cap)
      : n_(static_cast<int>(b.size())), R2_(R2), cap_(cap), mu_(n_, std::vector<long double>(n_, 0)), B_(n_),
        yc_(n_), x_(n_, 0) {
    std::vector<std::vector<long double>> star = b;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < i; ++j) {
        long double dot = 0;
        for (std::size_t c = 0; c < b[i].size(); ++c) dot += b[i][c] * star[j][c];
        mu_[i][j] = dot / B_[j];
        for (std::size_t c = 0; c < b[i].size(); ++c) star[i][c] -= mu_[i][j] * star[j][c];
      }
      long double nn = 0;
      for (long double v : star[i]) nn += v * v;
      B_[i] = nn;
    }
    for (int i = 0; i < n_; ++i) {
      long double dot = 0;
      for (std::size_t c = 0; c < y.size(); ++c) dot += y[c] * star[i][c];
      yc_[i] = dot / B_[i];
    }
  }

  // false when the cap was hit
  bool run(std::vector<std::vector<std::int64_t>>& out) {
    out_ = &out;
    overflow_ = false;
    visit(n_ - 1, 0.0L);
    return !overflow_;
  }

 private:
  void visit(int i, long double partial) {
    if (overflow_) return;
    long double c = yc_[i];
    for (int j = i + 1; j < n_; ++j) c -= x_[j] * mu_[j][i];
    const long double r = std::sqrt(std::max(0.0L, (R2_ - partial) / B_[i]));
    const auto lo = static_cast<std::int64_t>(std::ceil(c - r));
    const auto hi = static_cast<std::int64_t>(std::floor(c + r));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[i] = v;
      const long double d = partial + (v - c) * (v - c) * B_[i];
      if (d > R2_) continue;
      if (i == 0) {
        if (static_cast<std::int64_t>(out_->size()) >= cap_) {
          overflow_ = true;
          return;
        }
        out_->push_back(x_);
      } else {
        visit(i - 1, d);
      }
      if (overflow_) return;
    }
    x_[i] = 0;
  }

  int n_;
  long double R2_;
  std::int64_t cap_;
  std::vector<std::vector<long double>> mu_;
  std::vector<long double> B_, yc_;
  std::vector<std::int64_t> x_;
  std::vector<std::vector<std::int64_t>>* out_ = nullptr;
  bool overflow_ = false;
};

BigInt big_from(long double v) {
  BigInt z;
  Real r(0, 30);
  mpfr_set_ld(r.backend().data(), std::nearbyint(v), MPFR_RNDN);
  mpfr_get_z(z.backend().data(), r.backend().data(), MPFR_RNDN);
  return z;
}

long double to_ld(const BigInt& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.backend().data());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

// Grid indices m (t = m h) near the hit set, from the phase lattice.
bool lattice_candidates(const Phases& ph, double h, double M, double C, std::int64_t cap,
                        std::vector<std::int64_t>& ms, std::int64_t& enumerated) {
  const int n = static_cast<int>(ph.ell.size());
  const long double w = std::ldexp(1.0L, 24);
  const long double S = w * M;
  IntMatrix basis(n + 1, std::vector<BigInt>(n + 1, 0));
  basis[0][0] = big_from(w);
  for (int j = 0; j < n; ++j) {
    basis[0][j + 1] = big_from(S * C * h * ph.ell[j]);
    basis[j + 1][j + 1] = big_from(S * C);
  }
  LllResult red = lll_reduce(basis);
  std::vector<std::vector<long double>> b(n + 1, std::vector<long double>(n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int c = 0; c <= n; ++c) b[i][c] = to_ld(red.basis[i][c]) / S;
  }
  // the hit t = m h, k_j with m h ell_j + theta_j - k_j ~ 0, sits near y
  std::vector<long double> y(n + 1);
  y[0] = 0.5L;
  for (int j = 0; j < n; ++j) y[j + 1] = -C * ph.theta[j];
  Enumerator en(b, y, 0.25L + n + 1e-6L, cap);
  std::vector<std::vector<std::int64_t>> xs;
  const bool complete = en.run(xs);
  enumerated = static_cast<std::int64_t>(xs.size());
  const BigInt wb = big_from(w);
  for (const auto& x : xs) {
    BigInt v0 = 0;
    for (int i = 0; i <= n; ++i) v0 += BigInt(x[i]) * red.basis[i][0];
    if (v0 % wb != 0) continue;
    const BigInt m = v0 / wb;
    if (m < 0 || m > BigInt(static_cast<std::int64_t>(M))) continue;
    ms.push_back(m.convert_to<std::int64_t>());
  }
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return complete;
}

}  // namespace

double shift_defect(const ShiftProblem& problem, double t) { return defect_fast(phases_of(problem), t); }

double shift_defect_precise(const ShiftProblem& problem, double t, int bits) {
  PrecisionScope scope(bits);
  Real worst = 0;
  const Real T(t);
  for (std::size_t j = 0; j < problem.generators.size(); ++j) {
    const Real angle = -T * log(Real(problem.generators[j]));
    const Real re = cos(angle) - Real(problem.targets[j].real());
    const Real im = sin(angle) - Real(problem.targets[j].imag());
    worst = max(worst, Real(sqrt(re * re + im * im)));
  }
  return worst.convert_to<double>();
}

ShiftResult find_shift(const ShiftProblem& problem, const ShiftOptions& options) {
  validate(problem);
  const Phases ph = phases_of(problem);
  ShiftResult out;
  out.defect = defect_fast(ph, 0.0);
  out.t = 0.0;
  auto accept = [&](double t, double d, const char* method) {
    const double v = shift_defect_precise(problem, t, options.verify_bits);
    if (!(v < problem.eps)) return false;
    out.found = true;
    out.t = t;
    out.defect = d;
    out.verified_defect = v;
    out.method = method;
    return true;
  };
  if (out.defect < problem.eps && accept(0.0, out.defect, "trivial")) return out;

  const double h = options.grid_factor * problem.eps / ph.max_log;
  const double M = std::ceil(problem.T_max / h);
  const double tau = std::asin(std::min(1.0, problem.eps / 2)) / std::numbers::pi;
  double max_ell = 0;
  for (double e : ph.ell) max_ell = std::max(max_ell, e);
  const double C = 1.0 / (tau + 0.5 * h * max_ell);
  // max over j of |e(phi_j) - 1| moves by at most max log x per unit t
  const double slack = h * ph.max_log;

  auto try_index = [&](double t0, const char* method) {
    if (defect_fast(ph, t0) - slack >= problem.eps) return false;
    Refined r = refine(ph, t0, h, problem.T_max);
    if (r.defect < out.defect) {
      out.t = r.t;
      out.defect = r.defect;
    }
    if (!(r.defect < problem.eps)) return false;
    // polish within the window where every phase moves by less than pi/2
    Refined p = refine(ph, r.t, std::numbers::pi / (4 * ph.max_log), problem.T_max);
    if (p.defect < r.defect && accept(p.t, p.defect, method)) return true;
    return accept(r.t, r.defect, method);
  };

  std::vector<std::int64_t> ms;
  bool complete = false;
  try {
    complete = lattice_candidates(ph, h, M, C, options.max_candidates, ms, out.candidates);
  } catch (const PrecisionError&) {
    complete = false;
  }
  for (std::int64_t m : ms) {
    if (try_index(double(m) * h, "lattice")) return out;
  }
  if (complete) return out;  // every grid point near a hit was enumerated

  // Seeded stratified scan.
  const std::int64_t per_stratum = 4096;
  const double Ls = per_stratum * h;
  for (std::int64_t k = 0; k * Ls <= problem.T_max; ++k) {
    if (out.scan_evaluations >= options.max_scan_evaluations) break;
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
    const double offset = std::uniform_real_distribution<double>(0.0, h)(rng);
    for (std::int64_t i = 0; i < per_stratum; ++i) {
      const double t = k * Ls + offset + i * h;
      if (t > problem.T_max) break;
      out.scan_evaluations += 1;
      if (try_index(t, "scan")) return out;
    }
  }
  return out;
}

double default_eps2(double eps, const std::vector<std::int64_t>& support, double alpha) {
  double s = 0;
  for (std::int64_t n : support) s += 1.0 / (double(n) + alpha);
  if (!(s > 0)) throw DomainError("empty support for eps2");
  return eps / (4 * s);
}

std::string SeriesSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::hurwitz: os << "hurwitz(alpha=" << alpha << ")"; break;
    case Kind::lerch: os << "lerch(lambda=" << lambda << ", alpha=" << alpha << ")"; break;
    case Kind::dirichlet_L: os << "L(" << chi.label() << ")"; break;
  }
  return os.str();
}

std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = double(hits) / double(n);
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {hits == 0 ? 0.0 : std::max(0.0, center - half), hits == n ? 1.0 : std::min(1.0, center + half)};
}

namespace {

// zeta(1 + delta s + it, alpha) on a fixed s-grid for many t, sharing the
// head powers across the grid.
class HurwitzBatch {
 public:
  HurwitzBatch(double alpha, double delta, const std::vector<cplx>& grid, double T) : alpha_(alpha) {
    for (cplx s : grid) z0_.push_back(1.0 + delta * s);
    double max_im = 0;
    for (cplx z : z0_) max_im = std::max(max_im, std::abs(z.imag()));
    const auto cols = head_length(T + max_im);
    logs_.resize(cols);
    for (long n = 0; n < cols; ++n) logs_[n] = std::log(n + alpha);
    P_.resize(static_cast<Eigen::Index>(z0_.size()), cols);
    for (std::size_t g = 0; g < z0_.size(); ++g) {
      for (long n = 0; n < cols; ++n) P_(g, n) = std::exp(-z0_[g] * logs_[n]);
    }
    PrecisionScope scope(80);
    for (int k = 1; k <= 40; ++k) br_.push_back(bernoulli_ratio(k).convert_to<double>());
  }

  void set_t(double t) {
    t_ = t;
    double max_abs = 0;
    for (cplx z : z0_) max_abs = std::max(max_abs, std::abs(z + cplx(0, t)));
    N_ = head_length(std::abs(t) + 1.0);
    order_ = 0;
    for (int attempt = 0; attempt < 20 && order_ == 0; ++attempt) {
      for (int m = 1; m <= 40; ++m) {
        if (detail::em_log_remainder(cplx(z0_.front().real(), max_abs), alpha_, double(N_), m) < std::log(1e-13)) {
          order_ = m;
          break;
        }
      }
      if (order_ == 0) N_ = std::min<long>(N_ * 2, static_cast<long>(logs_.size()));
      if (N_ == static_cast<long>(logs_.size()) && order_ == 0) {
        order_ = 40;
        break;
      }
    }
    u_.resize(N_);
    for (long n = 0; n < N_; ++n) u_(n) = cplx(std::cos(t * logs_[n]), -std::sin(t * logs_[n]));
  }

  cplx value(std::size_t g) const {
    const cplx z = z0_[g] + cplx(0, t_);
    const cplx head = (P_.row(static_cast<Eigen::Index>(g)).head(N_) * u_).value();
    const double x = N_ + alpha_;
    const cplx xs = std::exp(-z * std::log(x));
    cplx tail = xs * x / (z - 1.0) + 0.5 * xs;
    cplx poch = z;
    cplx xpow = xs / x;
    for (int k = 1; k <= order_; ++k) {
      tail += br_[k - 1] * poch * xpow;
      poch *= (z + double(2 * k - 1)) * (z + double(2 * k));
      xpow /= x * x;
    }
    return head + tail;
  }

 private:
  static long head_length(double t) { return static_cast<long>(std::ceil(t / std::numbers::pi)) + 20; }

  double alpha_;
  std::vector<cplx> z0_;
  std::vector<double> logs_;
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> P_;
  Eigen::Matrix<cplx, Eigen::Dynamic, 1> u_;
  std::vector<double> br_;
  double t_ = 0.0;
  long N_ = 0;
  int order_ = 0;
};

cplx series_value(const SeriesSpec& series, cplx z) {
  switch (series.kind) {
    case SeriesSpec::Kind::hurwitz: return hurwitz_zeta_fast(z, series.alpha).value;
    case SeriesSpec::Kind::lerch: return lerch_zeta_fast(series.lambda, series.alpha, z).value;
    case SeriesSpec::Kind::dirichlet_L: {
      const std::int64_t q = series.chi.modulus();
      cplx sum = 0;
      for (std::int64_t a = 1; a <= q; ++a) {
        if (series.chi.is_unit(a)) sum += series.chi(a) * hurwitz_zeta_fast(z, double(a) / double(q)).value;
      }
      return sum * std::exp(-z * std::log(double(q)));
    }
  }
  return 0.0;
}

}  // namespace

DensityEstimate density_estimate(const SeriesSpec& series, const TargetFunction& f, const CompactRegion& K,
                                 double delta, double eps, double T, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("density estimate needs at least one sample");
  if (!(T > 0) || !(eps > 0) || !(delta > 0)) throw DomainError("density estimate needs T, eps, delta > 0");
  if (series.kind != SeriesSpec::Kind::dirichlet_L && !(series.alpha > 0)) throw DomainError("alpha must be positive");
  const auto& grid = K.grid();
  for (cplx s : grid) {
    if (!(1.0 + delta * s.real() > 1.0)) {
      throw DomainError("grid point s = (" + std::to_string(s.real()) + ", " + std::to_string(s.imag()) +
                        ") puts 1 + delta s outside Re > 1, where direct summation is not used");
    }
  }
  const std::vector<cplx> fv = f.on(K);

  DensityEstimate out;
  out.T = T;
  out.sample_count = samples;
  out.rng_seed = seed;
  out.eps = eps;
  out.delta = delta;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, T);
  std::vector<double> ts(samples);
  for (auto& t : ts) t = U(rng);
  std::sort(ts.begin(), ts.end());

  std::optional<HurwitzBatch> batch;
  if (series.kind == SeriesSpec::Kind::hurwitz) batch.emplace(series.alpha, delta, grid, T);
  for (double t : ts) {
    if (batch) batch->set_t(t);
    DensitySample smp{t, 0.0, true};
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const cplx z = 1.0 + delta * grid[g] + cplx(0, t);
      const cplx v = batch ? batch->value(g) : series_value(series, z);
      smp.defect = std::max(smp.defect, std::abs(v - fv[g]));
      if (!(smp.defect < eps)) {
        smp.complete = g + 1 == grid.size();
        break;
      }
    }
    const bool hit = smp.defect < eps;
    if (hit) {
      ++out.hits;
      if (!out.samples.empty() && out.samples.back().defect < eps && !out.hit_intervals.empty()) {
        out.hit_intervals.back().second = t;
      } else {
        out.hit_intervals.emplace_back(t, t);
      }
    }
    out.samples.push_back(smp);
  }
  out.hit_fraction = double(out.hits) / double(out.sample_count);
  std::tie(out.wilson_low, out.wilson_high) = wilson_interval(out.hits, out.sample_count);
  return out;
}

}  // namespace zlab
