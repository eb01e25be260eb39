#include "chistar/qpoly.hpp"

#include <algorithm>

#include "chistar/errors.hpp"

namespace chistar {

QPolynomial::QPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPolynomial::QPolynomial(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

QPolynomial QPolynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && chistar::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational QPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational QPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPolynomial QPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return QPolynomial(std::move(d));
}

QPolynomial QPolynomial::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
  return QPolynomial(std::move(r));
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] -= b.coeffs_[k];
  return QPolynomial(std::move(r));
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (is_zero(a.coeffs_[i])) continue;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[i + k] += a.coeffs_[i] * b.coeffs_[k];
  }
  return QPolynomial(std::move(r));
}

QPolynomial operator*(const Rational& c, const QPolynomial& a) {
  std::vector<Rational> r(a.coeffs_);
  for (auto& x : r) x *= c;
  return QPolynomial(std::move(r));
}

std::string QPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (chistar::is_zero(c)) continue;
    Rational mag = abs(c);
    out += out.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    bool unit = mag == 1;
    if (!unit || k == 0) out += chistar::to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {QPolynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  Rational inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] * inv;
    quo[static_cast<std::size_t>(k - db)] = c;
    if (chistar::is_zero(c)) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= c * b.coeffs()[static_cast<std::size_t>(i)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPolynomial(std::move(quo)), QPolynomial(std::move(rem))};
}

QPolynomial gcd(const QPolynomial& a, const QPolynomial& b) {
  QPolynomial x = a, y = b;
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPolynomial lcm(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return divmod(a * b, gcd(a, b)).first.monic();
}

QPolynomial inverse_mod(const QPolynomial& a, const QPolynomial& m) {
  // Extended Euclid tracking the cofactor of a.
  QPolynomial r0 = m, r1 = divmod(a, m).second;
  QPolynomial s0, s1 = QPolynomial{1};
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw DivisionByZero("element is not invertible modulo " + m.to_string());
  Rational inv = 1 / r0.leading();
  return divmod(inv * s0, m).second;
}

}  // namespace chistar
