#pragma once

#include <mpfr.h>

#include <string>

#include "chistar/rational.hpp"

namespace chistar {

/// MPFR float that owns its storage. Binary operations return a value at the
/// larger of the operand precisions; precisions are never silently lowered.
class Real {
 public:
  explicit Real(long prec = 256);
  Real(double v, long prec);
  Real(const Rational& r, long prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real pi(long prec);
  static Real from_string(const std::string& s, long prec);

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  // Same value rounded to another precision.
  Real with_precision(long prec) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Base-2 exponent (x = m 2^e with 1/2 <= |m| < 1); very negative for zero.
  long exponent() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  std::string to_string(int digits = 30) const;
  // Nearest integer (ties away from zero).
  Integer round() const;
  Integer floor() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long b);
  friend Real operator*(long b, Real a) { return std::move(a) * b; }
  friend Real operator/(Real a, long b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

 private:
  void raise_to(long prec);
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real max(const Real& a, const Real& b);
// 2^e at the given precision.
Real pow2(long e, long prec);

/// Complex number over Real with an explicit working precision (>= 64 bits).
class ComplexHP {
 public:
  explicit ComplexHP(long prec = 256);
  ComplexHP(const Real& re, const Real& im);
  ComplexHP(const Rational& re, const Rational& im, long prec);
  ComplexHP(double re, double im, long prec);

  // Parses "a+bi", "a-bi", "bi", "a", with a, b exact decimals or fractions.
  static ComplexHP parse(const std::string& s, long prec);
  // Exact rational parts of a parse-able string.
  static std::pair<Rational, Rational> parse_exact(const std::string& s);
  static ComplexHP i(long prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  long precision() const { return re_.precision(); }
  ComplexHP with_precision(long prec) const;

  ComplexHP operator-() const { return {-re_, -im_}; }
  ComplexHP& operator+=(const ComplexHP& o);
  ComplexHP& operator-=(const ComplexHP& o);
  ComplexHP& operator*=(const ComplexHP& o);
  ComplexHP& operator/=(const ComplexHP& o);
  ComplexHP& operator*=(const Real& o);
  friend ComplexHP operator+(ComplexHP a, const ComplexHP& b) { return a += b; }
  friend ComplexHP operator-(ComplexHP a, const ComplexHP& b) { return a -= b; }
  friend ComplexHP operator*(ComplexHP a, const ComplexHP& b) { return a *= b; }
  friend ComplexHP operator/(ComplexHP a, const ComplexHP& b) { return a /= b; }
  friend ComplexHP operator*(ComplexHP a, const Real& b) { return a *= b; }
  friend ComplexHP operator*(const Real& b, ComplexHP a) { return a *= b; }
  friend ComplexHP operator*(ComplexHP a, long b);
  friend ComplexHP operator*(long b, ComplexHP a) { return std::move(a) * b; }

  ComplexHP conj() const { return {re_, -im_}; }
  Real norm() const;  // |z|^2
  Real abs() const;
  ComplexHP pow(long e) const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  std::string to_string(int digits = 30) const;

 private:
  Real re_, im_;
};

ComplexHP exp(const ComplexHP& z);
// e^{2 pi i tau}
ComplexHP qparam(const ComplexHP& tau);

}  // namespace chistar
