#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace zlab {

using Real = boost::multiprecision::mpfr_float;

// Error hierarchy shared by every module. Each carries a short machine-readable
// kind so the CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct RegimeError : Error {
  explicit RegimeError(const std::string& w) : Error("out_of_regime", w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& w) : Error("precision", w) {}
};

// Infeasible parameter choice; `minimal` names the smallest (or largest) value
// of `parameter` the module believes would be feasible, or NaN when unknown.
struct InfeasibleError : Error {
  InfeasibleError(const std::string& w, std::string parameter, double minimal)
      : Error("infeasible", w), parameter(std::move(parameter)), minimal(minimal) {}
  std::string parameter;
  double minimal;
};

int digits10_for_bits(int bits);

// Sets the thread-local default precision of Real for the lifetime of the
// object. All Real temporaries created inside inherit this precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Copy of x rounded to the current default precision.
Real rebind(const Real& x);

Real pi_real();

// Plain multiprecision complex number, no error tracking.
struct MpComplex {
  Real re;
  Real im;

  MpComplex() : re(0), im(0) {}
  MpComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(const Real& r) : re(r), im(0) {}
  static MpComplex from(std::complex<double> z);

  MpComplex& operator+=(const MpComplex& o);
  MpComplex& operator-=(const MpComplex& o);
  MpComplex& operator*=(const MpComplex& o);
  MpComplex& operator*=(const Real& r);

  std::complex<double> to_complex() const;
};

MpComplex operator+(MpComplex a, const MpComplex& b);
MpComplex operator-(MpComplex a, const MpComplex& b);
MpComplex operator-(const MpComplex& a);
MpComplex operator*(MpComplex a, const MpComplex& b);
MpComplex operator*(MpComplex a, const Real& b);
MpComplex operator/(const MpComplex& a, const MpComplex& b);
MpComplex conj(const MpComplex& z);
Real abs(const MpComplex& z);
Real norm(const MpComplex& z);
MpComplex exp(const MpComplex& z);
// Principal branch.
MpComplex log(const MpComplex& z);
// x^(-s) for real x > 0.
MpComplex pow_neg(const Real& x, const MpComplex& s);
// e^{2 pi i turns}
MpComplex unit_root(const Real& turns);

// Complex value at a stated working precision with an attached absolute error
// bound. Arithmetic propagates the bound conservatively, including a rounding
// allowance at the result precision.
class PrecisionComplex {
 public:
  PrecisionComplex() = default;
  PrecisionComplex(MpComplex value, double err_abs, int prec_bits);
  static PrecisionComplex exact(std::complex<double> z, int prec_bits);
  static PrecisionComplex exact(const Real& re, const Real& im, int prec_bits);

  const Real& re() const { return value_.re; }
  const Real& im() const { return value_.im; }
  const MpComplex& value() const { return value_; }
  double err_abs() const { return err_abs_; }
  int prec_bits() const { return prec_bits_; }
  std::complex<double> to_complex() const { return value_.to_complex(); }
  Real abs() const;

  PrecisionComplex with_error(double extra) const;

  friend PrecisionComplex operator+(const PrecisionComplex& a, const PrecisionComplex& b);
  friend PrecisionComplex operator-(const PrecisionComplex& a, const PrecisionComplex& b);
  friend PrecisionComplex operator*(const PrecisionComplex& a, const PrecisionComplex& b);
  friend PrecisionComplex operator/(const PrecisionComplex& a, const PrecisionComplex& b);

 private:
  MpComplex value_;
  double err_abs_ = 0.0;
  int prec_bits_ = 53;
};

// |a - b| <= a.err + b.err + slack ?
bool within_combined_error(const PrecisionComplex& a, const PrecisionComplex& b, double slack = 0.0);
double abs_diff(const PrecisionComplex& a, const PrecisionComplex& b);

// Relative rounding unit 2^(1-bits).
double unit_roundoff(int bits);

std::string to_decimal(const Real& x, int digits);

}  // namespace zlab
