#include "zlab/lfunction.hpp"

#include <cmath>

#include "zlab/primes.hpp"
#include "zlab/zeta.hpp"

namespace zlab {

namespace {

void require_convergent(const PrecisionComplex& s, const char* what) {
  if (!(s.to_complex().real() - s.err_abs() > 1)) {
    throw RegimeError(std::string(what) + " requires Re(s) > 1");
  }
}

}  // namespace

PrecisionComplex dirichlet_L(const PrecisionComplex& s_in, const Character& chi, int prec_bits) {
  require_convergent(s_in, "dirichlet_L");
  if (s_in.err_abs() > 0) throw PrecisionError("dirichlet_L requires an exact argument");
  const std::int64_t q = chi.modulus();
  const std::complex<double> sd = s_in.to_complex();
  const int wp = prec_bits + 40;

  long N = 0;
  int order = 0;
  detail::em_choose(sd, 1.0 / double(q), prec_bits + 12 + static_cast<int>(std::log2(double(q))), N, order);

  PrecisionScope scope(wp);
  MpComplex s(rebind(s_in.re()), rebind(s_in.im()));
  std::vector<MpComplex> chi_values(q);
  for (std::int64_t a = 0; a < q; ++a) chi_values[a] = chi.value_mp(a);

  MpComplex head;
  double magnitude = 0;
  const std::int64_t last = N * q;
  for (std::int64_t n = 1; n <= last; ++n) {
    if (!chi.is_unit(n)) continue;
    head += chi_values[n % q] * pow_neg(Real(n), s);
    magnitude += std::pow(double(n), -sd.real());
  }

  MpComplex tail;
  MpComplex q_pow = pow_neg(Real(q), s);  // q^{-s}
  double rem = 0;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (!chi.is_unit(a)) continue;
    Real beta = Real(a) / Real(q);
    detail::TailResult t = detail::em_tail(s, beta, N, order);
    tail += chi_values[a % q] * q_pow * t.value;
    magnitude += t.magnitude * std::pow(double(q), -sd.real());
    rem += std::pow(double(q), -sd.real()) *
           std::exp(detail::em_log_remainder(sd, beta.convert_to<double>(), double(N), order));
  }
  MpComplex value = head + tail;
  double err = rem + 8.0 * (last + 4.0 * order * q) * unit_roundoff(wp) * magnitude;

  PrecisionScope out(prec_bits);
  MpComplex rounded(rebind(value.re), rebind(value.im));
  err += 4.0 * unit_roundoff(prec_bits) * abs(rounded).convert_to<double>();
  return PrecisionComplex(rounded, err, prec_bits);
}

PrecisionComplex log_L_euler(const PrecisionComplex& s_in, const Character& chi, std::int64_t P_cut, int prec_bits) {
  require_convergent(s_in, "log_L_euler");
  if (s_in.err_abs() > 0) throw PrecisionError("log_L_euler requires an exact argument");
  if (P_cut < 2) throw DomainError("log_L_euler requires P_cut >= 2");
  const std::complex<double> sd = s_in.to_complex();
  const int wp = prec_bits + 32;
  auto primes = primes_up_to(P_cut);

  PrecisionScope scope(wp);
  MpComplex s(rebind(s_in.re()), rebind(s_in.im()));
  const std::int64_t q = chi.modulus();
  std::vector<MpComplex> chi_values(q);
  for (std::int64_t a = 0; a < q; ++a) chi_values[a] = chi.value_mp(a);

  MpComplex sum;
  const MpComplex one(Real(1), Real(0));
  for (std::int64_t p : primes) {
    if (!chi.is_unit(p)) continue;
    MpComplex x = chi_values[p % q] * pow_neg(Real(p), s);
    sum -= log(one - x);
  }
  const double sigma = sd.real();
  double err = 2.0 * std::pow(double(P_cut), 1 - sigma) / (sigma - 1);
  err += 16.0 * primes.size() * unit_roundoff(wp) * (1.0 + abs(sum).convert_to<double>());

  PrecisionScope out(prec_bits);
  MpComplex rounded(rebind(sum.re), rebind(sum.im));
  err += 4.0 * unit_roundoff(prec_bits) * abs(rounded).convert_to<double>();
  return PrecisionComplex(rounded, err, prec_bits);
}

PrecisionComplex character_sum(const CharacterSet& set, std::int64_t a, int prec_bits) {
  PrecisionScope scope(prec_bits + 16);
  MpComplex sum;
  for (const auto& chi : set.characters()) sum += chi.value_mp(a);
  double err = 8.0 * set.size() * unit_roundoff(prec_bits + 16);
  return PrecisionComplex(sum, err, prec_bits);
}

DecompositionResult hurwitz_char_decomposition(const PrecisionComplex& s, std::int64_t p, std::int64_t q,
                                               int prec_bits) {
  if (q < 2 || p < 1 || p >= q) throw DomainError("decomposition requires 1 <= p < q");
  if (gcd64(p, q) != 1) throw DomainError("decomposition requires gcd(p, q) = 1");
  require_convergent(s, "hurwitz_char_decomposition");

  CharacterSet set = character_table(q);
  const int wp = prec_bits + 16;
  PrecisionComplex acc = PrecisionComplex::exact({0.0, 0.0}, wp);
  for (const auto& chi : set.characters()) {
    PrecisionComplex L = dirichlet_L(s, chi, wp);
    MpComplex cbar;
    {
      PrecisionScope scope(wp + 16);
      cbar = conj(chi.value_mp(p));
    }
    PrecisionComplex weight(cbar, 4.0 * unit_roundoff(wp + 16), wp);
    acc = acc + weight * L;
  }
  PrecisionComplex qs;
  {
    PrecisionScope scope(wp + 16);
    MpComplex sv(rebind(s.re()), rebind(s.im()));
    MpComplex neg(Real(-sv.re), Real(-sv.im));
    // q^{s} = (q)^{-(-s)}
    MpComplex v = pow_neg(Real(q), neg);
    Real inv_phi = Real(1) / Real(set.phi());
    v *= inv_phi;
    qs = PrecisionComplex(v, 8.0 * unit_roundoff(wp + 16) * abs(v).convert_to<double>(), wp);
  }
  PrecisionComplex value = qs * acc;
  DecompositionResult out;
  {
    PrecisionScope scope(prec_bits);
    MpComplex rounded(rebind(value.re()), rebind(value.im()));
    double err = value.err_abs() + 4.0 * unit_roundoff(prec_bits) * abs(rounded).convert_to<double>();
    out.value = PrecisionComplex(rounded, err, prec_bits);
  }
  out.orthogonality_gap = (p % q == 1 % q);
  out.p = p;
  out.q = q;
  return out;
}

}  // namespace zlab
