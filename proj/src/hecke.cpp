#include "chistar/hecke.hpp"

#include <cstdlib>
#include <numeric>

#include "chistar/errors.hpp"

namespace chistar {

namespace {
constexpr int kReductionCap = 100000;
}

GL2Matrix GL2Matrix::primitive_from(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  Integer l = 1;
  for (const auto* x : {&a, &b, &c, &d}) l = lcm(l, x->get_den());
  Integer e[4];
  const Rational* src[4] = {&a, &b, &c, &d};
  Integer g = 0;
  for (int k = 0; k < 4; ++k) {
    Rational v = *src[k] * l;
    e[k] = v.get_num();
    g = gcd(g, e[k]);
  }
  if (g == 0) throw InvalidArgument("zero matrix");
  for (auto& x : e) {
    x /= g;
    if (!x.fits_slong_p()) throw InvalidArgument("matrix entry too large");
  }
  return {e[0].get_si(), e[1].get_si(), e[2].get_si(), e[3].get_si()};
}

bool GL2Matrix::is_primitive() const { return std::gcd(std::gcd(a, b), std::gcd(c, d)) == 1; }

ComplexHP GL2Matrix::automorphy(const ComplexHP& tau) const {
  return tau * c + ComplexHP(Rational(d), Rational(0), tau.precision());
}

ComplexHP GL2Matrix::apply(const ComplexHP& tau) const {
  ComplexHP num = tau * a + ComplexHP(Rational(b), Rational(0), tau.precision());
  return num / automorphy(tau);
}

GL2Matrix operator*(const GL2Matrix& x, const GL2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string GL2Matrix::to_string() const {
  return std::to_string(a) + " " + std::to_string(b) + " / " + std::to_string(c) + " " + std::to_string(d);
}

std::vector<GL2Matrix> enumerate_DN(long N) {
  if (N < 1) throw InvalidArgument("enumerate_DN needs N >= 1");
  std::vector<GL2Matrix> out;
  for (long a = 1; a <= N; ++a) {
    if (N % a != 0) continue;
    long d = N / a;
    for (long b = 0; b < d; ++b)
      if (std::gcd(std::gcd(a, b), d) == 1) out.push_back({a, b, 0, d});
  }
  return out;
}

std::pair<GL2Matrix, GL2Matrix> decompose_to_DN(const GL2Matrix& g) {
  long n = g.det();
  if (n <= 0) throw InvalidArgument("decompose_to_DN needs positive determinant");
  if (!g.is_primitive()) throw NotPrimitive("matrix " + g.to_string() + " is not primitive");
  // gamma = g * adj(g') / N must be integral
  for (const auto& h : enumerate_DN(n)) {
    GL2Matrix adj{h.d, -h.b, 0, h.a};
    GL2Matrix m = g * adj;
    if (m.a % n || m.b % n || m.c % n || m.d % n) continue;
    GL2Matrix gamma{m.a / n, m.b / n, m.c / n, m.d / n};
    return {gamma, h};
  }
  throw NotPrimitive("no D_N representative for " + g.to_string());
}

std::pair<ComplexHP, GL2Matrix> reduce_fundamental(const ComplexHP& tau) {
  if (tau.im().sign() <= 0) throw DomainError("Im tau must be positive");
  long prec = tau.precision();
  // Work with guard bits; the final point is recomputed from the exact matrix.
  ComplexHP z = tau.with_precision(prec + 64);
  GL2Matrix gamma;
  Real half(make_rational(1, 2), prec + 64), one(Rational(1), prec + 64);
  for (int it = 0; it < kReductionCap; ++it) {
    Real shifted = z.re() + half;
    Integer n = shifted.floor();
    // keep Re in (-1/2, 1/2]
    if (Real(Rational(n), prec + 64) == shifted) n -= 1;
    if (n != 0) {
      if (!n.fits_slong_p()) throw PrecisionLoss("translation too large during reduction");
      long k = n.get_si();
      z -= ComplexHP(Rational(k), Rational(0), prec + 64);
      gamma = GL2Matrix{1, -k, 0, 1} * gamma;
    }
    if (z.norm() < one) {
      z = ComplexHP(Rational(-1), Rational(0), prec + 64) / z;
      gamma = GL2Matrix{0, -1, 1, 0} * gamma;
      continue;
    }
    return {gamma.apply(tau.with_precision(prec + 64)).with_precision(prec), gamma};
  }
  throw PrecisionLoss("fundamental-domain reduction exceeded the iteration cap");
}

}  // namespace chistar
