#include "chistar/real.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "chistar/errors.hpp"

namespace chistar {

namespace {
long prec_of(mpfr_srcptr x) { return static_cast<long>(mpfr_get_prec(x)); }
}  // namespace

Real::Real(long prec) {
  if (prec < 2) prec = 2;
  mpfr_init2(v_, static_cast<mpfr_prec_t>(prec));
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, long prec) : Real(prec) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(const Rational& r, long prec) : Real(prec) { mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN); }

Real::Real(const Real& o) : Real(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }

Real::Real(Real&& o) noexcept : Real(o.precision()) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(long prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::from_string(const std::string& s, long prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw ParseError("bad real '" + s + "'");
  return r;
}

Real Real::with_precision(long prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string Real::to_string(int digits) const {
  if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Integer Real::round() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
  return z;
}

Integer Real::floor() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

void Real::raise_to(long prec) {
  if (prec > precision()) mpfr_prec_round(v_, static_cast<mpfr_prec_t>(prec), MPFR_RNDN);
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  raise_to(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  raise_to(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  raise_to(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.is_zero()) throw DivisionByZero("real division by zero");
  raise_to(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator*(Real a, long b) {
  mpfr_mul_si(a.v_, a.v_, b, MPFR_RNDN);
  return a;
}

Real operator/(Real a, long b) {
  if (b == 0) throw DivisionByZero("real division by zero");
  mpfr_div_si(a.v_, a.v_, b, MPFR_RNDN);
  return a;
}

#define CHISTAR_UNARY(name, fn)            \
  Real name(const Real& x) {               \
    Real r(x.precision());                 \
    fn(r.get(), x.get(), MPFR_RNDN);       \
    return r;                              \
  }
CHISTAR_UNARY(abs, mpfr_abs)
CHISTAR_UNARY(sqrt, mpfr_sqrt)
CHISTAR_UNARY(exp, mpfr_exp)
CHISTAR_UNARY(log, mpfr_log)
CHISTAR_UNARY(sin, mpfr_sin)
CHISTAR_UNARY(cos, mpfr_cos)
#undef CHISTAR_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b.with_precision(std::max(a.precision(), b.precision())) : a.with_precision(std::max(a.precision(), b.precision())); }

Real pow2(long e, long prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

// ---- ComplexHP ----

ComplexHP::ComplexHP(long prec) : re_(prec), im_(prec) {}

ComplexHP::ComplexHP(const Real& re, const Real& im) {
  long p = std::max(re.precision(), im.precision());
  re_ = re.with_precision(p);
  im_ = im.with_precision(p);
}

ComplexHP::ComplexHP(const Rational& re, const Rational& im, long prec) : re_(re, prec), im_(im, prec) {}

ComplexHP::ComplexHP(double re, double im, long prec) : re_(re, prec), im_(im, prec) {}

std::pair<Rational, Rational> ComplexHP::parse_exact(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i') return {parse_rational(s), Rational(0)};
  s.pop_back();
  // split at the last sign that is not part of an exponent and not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im == "+" || im == "" ) im = "1";
  if (im == "-") im = "-1";
  return {parse_rational(re), parse_rational(im)};
}

ComplexHP ComplexHP::parse(const std::string& s, long prec) {
  auto [re, im] = parse_exact(s);
  return ComplexHP(re, im, prec);
}

ComplexHP ComplexHP::i(long prec) { return ComplexHP(Rational(0), Rational(1), prec); }

ComplexHP ComplexHP::with_precision(long prec) const { return {re_.with_precision(prec), im_.with_precision(prec)}; }

ComplexHP& ComplexHP::operator+=(const ComplexHP& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}
ComplexHP& ComplexHP::operator-=(const ComplexHP& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}
ComplexHP& ComplexHP::operator*=(const ComplexHP& o) {
  Real r = re_ * o.re_ - im_ * o.im_;
  Real i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}
ComplexHP& ComplexHP::operator/=(const ComplexHP& o) {
  Real d = o.norm();
  if (d.is_zero()) throw DivisionByZero("complex division by zero");
  Real r = (re_ * o.re_ + im_ * o.im_) / d;
  Real i = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}
ComplexHP& ComplexHP::operator*=(const Real& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}
ComplexHP operator*(ComplexHP a, long b) {
  a.re_ = a.re_ * b;
  a.im_ = a.im_ * b;
  return a;
}

Real ComplexHP::norm() const { return re_ * re_ + im_ * im_; }
Real ComplexHP::abs() const {
  Real r(precision());
  mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
  return r;
}

ComplexHP ComplexHP::pow(long e) const {
  if (e < 0) return ComplexHP(Rational(1), Rational(0), precision()) / pow(-e);
  ComplexHP result(Rational(1), Rational(0), precision()), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string ComplexHP::to_string(int digits) const {
  std::string r = re_.to_string(digits), i = im_.to_string(digits);
  if (!i.empty() && i[0] == '-') return r + " - " + i.substr(1) + "i";
  return r + " + " + i + "i";
}

ComplexHP exp(const ComplexHP& z) {
  Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

ComplexHP qparam(const ComplexHP& tau) {
  Real twopi = Real::pi(tau.precision()) * 2;
  return exp(ComplexHP(-(tau.im() * twopi), tau.re() * twopi));
}

}  // namespace chistar
