#include "zlab/zeta.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace zlab {

namespace {

using Rational = boost::multiprecision::mpq_rational;

// B_{2k}/(2k)! as exact rationals, grown on demand (Akiyama-Tanigawa).
class BernoulliTable {
 public:
  Rational ratio(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(2 * k);
    return ratios_[k];
  }

 private:
  void grow(int n) {
    while (static_cast<int>(bern_.size()) <= n) {
      int m = static_cast<int>(bern_.size());
      work_.push_back(Rational(1, m + 1));
      for (int j = m; j >= 1; --j) work_[j - 1] = j * (work_[j - 1] - work_[j]);
      bern_.push_back(work_[0]);
      if (m % 2 == 0) {
        factorial_ *= (m == 0 ? 1 : m * (m - 1));
        ratios_.push_back(Rational(bern_[m] / factorial_));
      }
    }
  }

  std::mutex mu_;
  std::vector<Rational> work_;
  std::vector<Rational> bern_;
  std::vector<Rational> ratios_;
  Rational factorial_ = 1;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable t;
  return t;
}

double log_abs_poch(cplx s, int len) {
  double acc = 0;
  for (int j = 0; j < len; ++j) acc += std::log(std::abs(s + double(j)));
  return acc;
}

cplx to_cplx(const PrecisionComplex& s) { return s.to_complex(); }

void check_alpha(const Real& alpha) {
  if (!(alpha > 0)) throw DomainError("Hurwitz parameter alpha must be positive");
}

}  // namespace

Real bernoulli_ratio(int k) {
  Rational q = bernoulli_table().ratio(k);
  Real num(boost::multiprecision::numerator(q).str());
  Real den(boost::multiprecision::denominator(q).str());
  return num / den;
}

namespace detail {

double em_log_remainder(cplx s, double beta, double N, int order) {
  double sigma = s.real();
  double denom = sigma + 2 * order - 1;
  if (denom <= 0) return std::numeric_limits<double>::infinity();
  return std::log(4.0) + log_abs_poch(s, 2 * order) - 2 * order * std::log(2 * std::numbers::pi) +
         (-sigma - 2 * order + 1) * std::log(N + beta) - std::log(denom);
}

void em_choose(cplx s, double beta, int target_bits, long& N, int& order) {
  const double target = -target_bits * std::numbers::ln2;
  long n = std::max<long>(8, static_cast<long>(std::ceil(0.08 * target_bits + std::abs(s) / (2 * std::numbers::pi))));
  for (int attempt = 0; attempt < 40; ++attempt, n *= 2) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 4 * target_bits + 8; ++m) {
      double lr = em_log_remainder(s, beta, double(n), m);
      if (lr < target) {
        N = n;
        order = m;
        return;
      }
      if (lr > best + 5) break;  // past the optimal order for this N
      best = std::min(best, lr);
    }
  }
  throw PrecisionError("Euler-Maclaurin parameters could not reach the requested precision");
}

TailResult em_tail(const MpComplex& s, const Real& beta, long N, int order) {
  TailResult out;
  Real x = Real(N) + beta;
  MpComplex xs = pow_neg(x, s);  // x^{-s}
  MpComplex s_minus_1(Real(s.re - 1), s.im);
  MpComplex integral = (xs * x) / s_minus_1;
  MpComplex half = xs * Real(0.5);
  out.value = integral + half;
  out.magnitude = abs(integral).convert_to<double>() + abs(half).convert_to<double>();

  MpComplex poch = s;             // (s)_{2k-1}
  Real inv_x = Real(1) / x;
  Real inv_x2 = inv_x * inv_x;
  MpComplex xpow = xs * inv_x;    // x^{-s-2k+1}
  for (int k = 1; k <= order; ++k) {
    MpComplex term = poch * xpow * bernoulli_ratio(k);
    out.value += term;
    out.magnitude += abs(term).convert_to<double>();
    MpComplex a(Real(s.re + (2 * k - 1)), s.im);
    MpComplex b(Real(s.re + 2 * k), s.im);
    poch *= a;
    poch *= b;
    xpow *= inv_x2;
  }
  return out;
}

}  // namespace detail

PrecisionComplex hurwitz_zeta(const PrecisionComplex& s_in, const Real& alpha_in, int prec_bits) {
  check_alpha(alpha_in);
  if (prec_bits < 16) throw DomainError("prec_bits must be at least 16");
  const cplx sd = to_cplx(s_in);
  if (sd == cplx(1.0, 0.0) || std::abs(sd - 1.0) <= s_in.err_abs()) {
    throw PoleError("Hurwitz zeta has a pole at s = 1");
  }
  const double es = s_in.err_abs();
  if (es > 0 && !(sd.real() - es > 1)) {
    throw PrecisionError("uncertain argument is only supported in Re(s) > 1");
  }

  const int wp = prec_bits + 40;
  PrecisionScope scope(wp);
  MpComplex s(rebind(s_in.re()), rebind(s_in.im()));
  Real alpha = rebind(alpha_in);
  const double ad = alpha.convert_to<double>();

  long N = 0;
  int order = 0;
  detail::em_choose(sd, ad, prec_bits + 10, N, order);

  MpComplex head;
  double magnitude = 0;
  for (long n = 0; n < N; ++n) {
    Real x = Real(n) + alpha;
    MpComplex term = pow_neg(x, s);
    magnitude += std::pow(x.convert_to<double>(), -sd.real());
    head += term;
  }
  detail::TailResult tail = detail::em_tail(s, alpha, N, order);
  MpComplex value = head + tail.value;
  magnitude += tail.magnitude;

  double err = std::exp(detail::em_log_remainder(sd, ad, double(N), order));
  err += 8.0 * (N + 4.0 * order) * unit_roundoff(wp) * magnitude;

  if (es > 0) {
    // |zeta'| <= sum log(n+alpha) (n+alpha)^{-(sigma-es)} over the segment of uncertainty.
    double sig = sd.real() - es;
    double deriv = 0;
    for (long n = 0; n < N; ++n) {
      double x = n + ad;
      deriv += std::abs(std::log(x)) * std::pow(x, -sig);
    }
    double xN = N + ad;
    deriv += std::pow(xN, 1 - sig) * (std::log(xN) / (sig - 1) + 1 / ((sig - 1) * (sig - 1)));
    err += es * deriv;
  }

  PrecisionScope out_scope(prec_bits);
  MpComplex rounded(rebind(value.re), rebind(value.im));
  err += 4.0 * unit_roundoff(prec_bits) * abs(rounded).convert_to<double>();
  return PrecisionComplex(rounded, err, prec_bits);
}

PrecisionComplex hurwitz_zeta(cplx s, const Real& alpha, int prec_bits) {
  return hurwitz_zeta(PrecisionComplex::exact(s, prec_bits), alpha, prec_bits);
}

PrecisionComplex lerch_zeta(double lambda, const Real& alpha_in, const PrecisionComplex& s_in, int prec_bits) {
  check_alpha(alpha_in);
  const cplx sd = to_cplx(s_in);
  if (!(sd.real() - s_in.err_abs() > 1)) {
    throw RegimeError("lerch_zeta is only provided for Re(s) > 1");
  }
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  const double frac = lambda - std::floor(lambda);
  if (frac == 0.0) return hurwitz_zeta(s_in, alpha_in, prec_bits);
  if (s_in.err_abs() > 0) throw PrecisionError("lerch_zeta requires an exact argument");

  const double d = 2 * std::abs(std::sin(std::numbers::pi * frac));  // |1 - z|
  const double ad = alpha_in.convert_to<double>();
  const double target = -(prec_bits + 10) * std::numbers::ln2;
  const double sigma = sd.real();

  auto log_rem = [&](double N, int J) {
    double x = N + ad;
    double tail = std::log(std::pow(x, -sigma - J) + std::pow(x, 1 - sigma - J) / (sigma + J - 1));
    return -J * std::log(d) + log_abs_poch(sd, J) + tail;
  };
  long N = std::max<long>(8, static_cast<long>(std::ceil(2.0 * (std::abs(sd) + 8) / d)));
  int J = 0;
  for (int attempt = 0; attempt < 40 && J == 0; ++attempt, N *= 2) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 6 * prec_bits; ++j) {
      double lr = log_rem(double(N), j);
      if (lr < target) {
        J = j;
        break;
      }
      if (lr > best + 5) break;
      best = std::min(best, lr);
    }
    if (J != 0) break;
  }
  if (J == 0) throw PrecisionError("lerch_zeta could not reach the requested precision");

  // Forward differences lose about log2(2(N+alpha+J)) bits per order.
  const int guard = static_cast<int>(std::ceil(J * std::log2(2.0 * (N + ad + J)))) + 48;
  const int wp = prec_bits + guard;
  PrecisionScope scope(wp);
  MpComplex s(rebind(s_in.re()), rebind(s_in.im()));
  Real alpha = rebind(alpha_in);
  Real lam = Real(frac);

  MpComplex head;
  double magnitude = 0;
  for (long k = 0; k < N; ++k) {
    Real turns = lam * k;
    turns -= boost::multiprecision::floor(turns);
    MpComplex term = unit_root(turns) * pow_neg(Real(Real(k) + alpha), s);
    magnitude += std::pow(k + ad, -sigma);
    head += term;
  }

  std::vector<MpComplex> diff;
  for (int i = 0; i < J; ++i) diff.push_back(pow_neg(Real(Real(N + i) + alpha), s));
  MpComplex z = unit_root(lam);
  MpComplex one_minus_z = MpComplex(Real(1), Real(0)) - z;
  Real zN_turns = lam * N;
  zN_turns -= boost::multiprecision::floor(zN_turns);
  MpComplex zpow = unit_root(zN_turns);  // z^{N+j}
  MpComplex denom = one_minus_z;         // (1-z)^{j+1}
  MpComplex tail;
  for (int j = 0; j < J; ++j) {
    tail += (zpow * diff[0]) / denom;
    for (int i = 0; i + 1 < J - j; ++i) diff[i] = diff[i + 1] - diff[i];
    zpow *= z;
    denom *= one_minus_z;
  }
  MpComplex value = head + tail;

  double err = std::exp(log_rem(double(N), J));
  err += 8.0 * N * unit_roundoff(wp) * magnitude;
  const double fN = std::pow(N + ad, -sigma);
  for (int j = 0; j < J; ++j) err += std::ldexp(8.0 * fN * unit_roundoff(wp), j) / std::pow(d, j + 1);

  PrecisionScope out_scope(prec_bits);
  MpComplex rounded(rebind(value.re), rebind(value.im));
  err += 4.0 * unit_roundoff(prec_bits) * abs(rounded).convert_to<double>();
  return PrecisionComplex(rounded, err, prec_bits);
}

PrecisionComplex lerch_zeta(double lambda, const Real& alpha, cplx s, int prec_bits) {
  return lerch_zeta(lambda, alpha, PrecisionComplex::exact(s, prec_bits), prec_bits);
}

// ---------------------------------------------------------------------------
// double precision

namespace {

const std::vector<double>& bernoulli_ratio_doubles() {
  static const std::vector<double> table = [] {
    std::vector<double> t(1, 0.0);
    PrecisionScope scope(80);
    for (int k = 1; k <= 40; ++k) t.push_back(bernoulli_ratio(k).convert_to<double>());
    return t;
  }();
  return table;
}

}  // namespace

FastValue hurwitz_zeta_fast(cplx s, double alpha) {
  if (!(alpha > 0)) throw DomainError("Hurwitz parameter alpha must be positive");
  if (s == cplx(1.0, 0.0)) throw PoleError("Hurwitz zeta has a pole at s = 1");
  const auto& br = bernoulli_ratio_doubles();
  const double target = std::log(1e-16);
  long N = std::max<long>(10, static_cast<long>(std::ceil(std::abs(s.imag()) / std::numbers::pi)) + 10);
  int order = 0;
  double lr = 0;
  for (int attempt = 0; attempt < 30 && order == 0; ++attempt) {
    for (int m = 1; m <= 40; ++m) {
      lr = detail::em_log_remainder(s, alpha, double(N), m);
      if (lr < target) {
        order = m;
        break;
      }
    }
    if (order == 0) N *= 2;
  }
  if (order == 0) {
    order = 40;
    lr = detail::em_log_remainder(s, alpha, double(N), order);
  }

  cplx head = 0;
  double magnitude = 0;
  for (long n = 0; n < N; ++n) {
    double x = n + alpha;
    double l = std::log(x);
    double m = std::exp(-s.real() * l);
    head += m * cplx(std::cos(s.imag() * l), -std::sin(s.imag() * l));
    magnitude += m;
  }
  double x = N + alpha;
  cplx xs = std::exp(-s * std::log(x));
  cplx tail = xs * x / (s - 1.0) + 0.5 * xs;
  magnitude += std::abs(xs * x / (s - 1.0));
  cplx poch = s;
  cplx xpow = xs / x;
  for (int k = 1; k <= order; ++k) {
    cplx term = br[k] * poch * xpow;
    tail += term;
    magnitude += std::abs(term);
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    xpow /= x * x;
  }
  double err = std::exp(lr) + 8.0 * (N + order) * 1.2e-16 * magnitude;
  return {head + tail, err};
}

FastValue lerch_zeta_fast(double lambda, double alpha, cplx s) {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (!(s.real() > 1)) throw RegimeError("lerch_zeta is only provided for Re(s) > 1");
  const double frac = lambda - std::floor(lambda);
  if (frac == 0.0) return hurwitz_zeta_fast(s, alpha);
  const double d = 2 * std::abs(std::sin(std::numbers::pi * frac));
  const int J = 10;
  long N = static_cast<long>(std::ceil(2.0 * (std::abs(s) + J) / d)) + 10;
  const cplx z = std::polar(1.0, 2 * std::numbers::pi * frac);

  cplx head = 0;
  double magnitude = 0;
  for (long k = 0; k < N; ++k) {
    double ph = frac * double(k);
    ph -= std::floor(ph);
    double l = std::log(k + alpha);
    double m = std::exp(-s.real() * l);
    head += std::polar(1.0, 2 * std::numbers::pi * ph) * m * cplx(std::cos(s.imag() * l), -std::sin(s.imag() * l));
    magnitude += m;
  }
  std::vector<cplx> diff(J);
  for (int i = 0; i < J; ++i) diff[i] = std::exp(-s * std::log(N + i + alpha));
  double phN = frac * double(N);
  phN -= std::floor(phN);
  cplx zpow = std::polar(1.0, 2 * std::numbers::pi * phN);
  cplx denom = 1.0 - z;
  cplx tail = 0;
  for (int j = 0; j < J; ++j) {
    tail += zpow * diff[0] / denom;
    for (int i = 0; i + 1 < J - j; ++i) diff[i] = diff[i + 1] - diff[i];
    zpow *= z;
    denom *= (1.0 - z);
  }
  double x = N + alpha;
  double sigma = s.real();
  double rem = std::exp(-J * std::log(d) + log_abs_poch(s, J)) *
               (std::pow(x, -sigma - J) + std::pow(x, 1 - sigma - J) / (sigma + J - 1));
  double fN = std::pow(x, -sigma);
  double round = 8.0 * N * 1.2e-16 * magnitude;
  for (int j = 0; j < J; ++j) round += std::ldexp(8.0 * fN * 1.2e-16, j) / std::pow(d, j + 1);
  return {head + tail, rem + round};
}

}  // namespace zlab
