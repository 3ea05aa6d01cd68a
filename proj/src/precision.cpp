#include "zlab/precision.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

namespace zlab {

int digits10_for_bits(int bits) {
  return static_cast<int>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real rebind(const Real& x) {
  return Real(x, Real::default_precision());
}

Real pi_real() { return boost::multiprecision::mpfr_float(boost::math::constants::pi<Real>()); }

double unit_roundoff(int bits) { return std::ldexp(1.0, 1 - bits); }

MpComplex MpComplex::from(std::complex<double> z) { return MpComplex(Real(z.real()), Real(z.imag())); }

MpComplex& MpComplex::operator+=(const MpComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

MpComplex& MpComplex::operator-=(const MpComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

MpComplex& MpComplex::operator*=(const MpComplex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

MpComplex& MpComplex::operator*=(const Real& r) {
  re *= r;
  im *= r;
  return *this;
}

std::complex<double> MpComplex::to_complex() const {
  return {re.convert_to<double>(), im.convert_to<double>()};
}

MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
MpComplex operator-(const MpComplex& a) { return MpComplex(Real(-a.re), Real(-a.im)); }
MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
MpComplex operator*(MpComplex a, const Real& b) { return a *= b; }

MpComplex operator/(const MpComplex& a, const MpComplex& b) {
  Real d = b.re * b.re + b.im * b.im;
  return MpComplex(Real((a.re * b.re + a.im * b.im) / d), Real((a.im * b.re - a.re * b.im) / d));
}

MpComplex conj(const MpComplex& z) { return MpComplex(z.re, Real(-z.im)); }

Real norm(const MpComplex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const MpComplex& z) { return boost::multiprecision::sqrt(norm(z)); }

MpComplex exp(const MpComplex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return MpComplex(Real(m * boost::multiprecision::cos(z.im)), Real(m * boost::multiprecision::sin(z.im)));
}

MpComplex log(const MpComplex& z) {
  return MpComplex(Real(boost::multiprecision::log(abs(z))), Real(boost::multiprecision::atan2(z.im, z.re)));
}

MpComplex pow_neg(const Real& x, const MpComplex& s) {
  // Operands may carry a lower precision than the current default.
  Real l = boost::multiprecision::log(rebind(x));
  Real m = boost::multiprecision::exp(-rebind(s.re) * l);
  Real ph = rebind(s.im) * l;
  return MpComplex(Real(m * boost::multiprecision::cos(ph)), Real(-m * boost::multiprecision::sin(ph)));
}

MpComplex unit_root(const Real& turns) {
  Real ang = 2 * pi_real() * rebind(turns);
  return MpComplex(Real(boost::multiprecision::cos(ang)), Real(boost::multiprecision::sin(ang)));
}

PrecisionComplex::PrecisionComplex(MpComplex value, double err_abs, int prec_bits)
    : value_(std::move(value)), err_abs_(err_abs), prec_bits_(prec_bits) {
  if (!(err_abs_ >= 0.0) || !std::isfinite(err_abs_)) {
    throw PrecisionError("error bound is not a finite nonnegative number");
  }
}

PrecisionComplex PrecisionComplex::exact(std::complex<double> z, int prec_bits) {
  PrecisionScope scope(prec_bits);
  return PrecisionComplex(MpComplex::from(z), 0.0, prec_bits);
}

PrecisionComplex PrecisionComplex::exact(const Real& re, const Real& im, int prec_bits) {
  PrecisionScope scope(prec_bits);
  return PrecisionComplex(MpComplex(rebind(re), rebind(im)), 0.0, prec_bits);
}

Real PrecisionComplex::abs() const { return zlab::abs(value_); }

PrecisionComplex PrecisionComplex::with_error(double extra) const {
  PrecisionComplex out = *this;
  out.err_abs_ += extra;
  return out;
}

namespace {

int result_bits(const PrecisionComplex& a, const PrecisionComplex& b) {
  return std::min(a.prec_bits(), b.prec_bits());
}

double rounding(const MpComplex& v, int bits) {
  return 4.0 * unit_roundoff(bits) * abs(v).convert_to<double>();
}

}  // namespace

PrecisionComplex operator+(const PrecisionComplex& a, const PrecisionComplex& b) {
  int bits = result_bits(a, b);
  PrecisionScope scope(bits);
  MpComplex v = a.value_ + b.value_;
  return PrecisionComplex(v, a.err_abs_ + b.err_abs_ + rounding(v, bits), bits);
}

PrecisionComplex operator-(const PrecisionComplex& a, const PrecisionComplex& b) {
  int bits = result_bits(a, b);
  PrecisionScope scope(bits);
  MpComplex v = a.value_ - b.value_;
  return PrecisionComplex(v, a.err_abs_ + b.err_abs_ + rounding(v, bits), bits);
}

PrecisionComplex operator*(const PrecisionComplex& a, const PrecisionComplex& b) {
  int bits = result_bits(a, b);
  PrecisionScope scope(bits);
  MpComplex v = a.value_ * b.value_;
  double ma = a.abs().convert_to<double>();
  double mb = b.abs().convert_to<double>();
  double err = ma * b.err_abs_ + mb * a.err_abs_ + a.err_abs_ * b.err_abs_ + rounding(v, bits);
  return PrecisionComplex(v, err, bits);
}

PrecisionComplex operator/(const PrecisionComplex& a, const PrecisionComplex& b) {
  int bits = result_bits(a, b);
  PrecisionScope scope(bits);
  double mb = b.abs().convert_to<double>();
  if (!(mb > b.err_abs_)) throw PrecisionError("division by a value indistinguishable from zero");
  MpComplex v = a.value_ / b.value_;
  double mq = abs(v).convert_to<double>();
  double err = (a.err_abs_ + mq * b.err_abs_) / (mb - b.err_abs_) + rounding(v, bits);
  return PrecisionComplex(v, err, bits);
}

double abs_diff(const PrecisionComplex& a, const PrecisionComplex& b) {
  PrecisionScope scope(std::max(a.prec_bits(), b.prec_bits()));
  return abs(a.value() - b.value()).convert_to<double>();
}

bool within_combined_error(const PrecisionComplex& a, const PrecisionComplex& b, double slack) {
  return abs_diff(a, b) <= a.err_abs() + b.err_abs() + slack;
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace zlab
