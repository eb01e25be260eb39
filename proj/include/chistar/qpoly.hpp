#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chistar/rational.hpp"

namespace chistar {

/// Dense univariate polynomial over Q, lowest degree first. The highest
/// stored coefficient is nonzero unless the polynomial is zero (empty).
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<Rational> coeffs);
  QPolynomial(std::initializer_list<long> coeffs);

  static QPolynomial monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  QPolynomial derivative() const;
  QPolynomial monic() const;

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(const Rational& c, const QPolynomial& a);
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b);
// Monic gcd (zero when both inputs are zero).
QPolynomial gcd(const QPolynomial& a, const QPolynomial& b);
// Monic lcm up to the product of leading coefficients.
QPolynomial lcm(const QPolynomial& a, const QPolynomial& b);
// Inverse of a modulo m, or throws DivisionByZero when gcd(a, m) != 1.
QPolynomial inverse_mod(const QPolynomial& a, const QPolynomial& m);

}  // namespace chistar
