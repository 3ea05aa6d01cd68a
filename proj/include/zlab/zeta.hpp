#pragma once

#include <complex>

#include "zlab/precision.hpp"

namespace zlab {

using cplx = std::complex<double>;

// Hurwitz zeta sum_{n>=0} (n+alpha)^(-s) by Euler-Maclaurin summation, valid for
// any s != 1 and alpha > 0. Truncation point and order are chosen from
// prec_bits; the remainder bound is folded into err_abs.
PrecisionComplex hurwitz_zeta(const PrecisionComplex& s, const Real& alpha, int prec_bits);
PrecisionComplex hurwitz_zeta(cplx s, const Real& alpha, int prec_bits);

// Lerch zeta sum_{k>=0} e^{2 pi i lambda k} (k+alpha)^(-s) for Re(s) > 1.
// Integer lambda reduces to hurwitz_zeta; otherwise the tail beyond the head
// is summed by iterated summation by parts with an explicit remainder bound.
PrecisionComplex lerch_zeta(double lambda, const Real& alpha, const PrecisionComplex& s, int prec_bits);
PrecisionComplex lerch_zeta(double lambda, const Real& alpha, cplx s, int prec_bits);

// B_{2k}/(2k)! at the current default precision.
Real bernoulli_ratio(int k);

namespace detail {

struct TailResult {
  MpComplex value;
  double magnitude = 0.0;  // sum of |pieces|, drives the rounding allowance
};

// Euler-Maclaurin evaluation of sum_{m>=N} (m+beta)^(-s) with `order`
// Bernoulli corrections (remainder excluded).
TailResult em_tail(const MpComplex& s, const Real& beta, long N, int order);

// log of the Euler-Maclaurin remainder bound after `order` corrections.
double em_log_remainder(cplx s, double beta, double N, int order);

// Picks (N, order) so the remainder is below 2^(-target_bits).
void em_choose(cplx s, double beta, int target_bits, long& N, int& order);

}  // namespace detail

// Double-precision evaluators for the sampling pipelines. `err` bounds the
// truncation error plus a rounding allowance.
struct FastValue {
  cplx value;
  double err;
};

FastValue hurwitz_zeta_fast(cplx s, double alpha);
FastValue lerch_zeta_fast(double lambda, double alpha, cplx s);

}  // namespace zlab
