#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chistar/qpoly.hpp"
#include "chistar/rational.hpp"

namespace chistar {

int euler_phi(int d);

// Monic d-th cyclotomic polynomial. Throws InvalidArgument for d < 1.
QPolynomial cyclotomic_polynomial(int d);

/// Element of Q(zeta_d) in the power basis 1, zeta_d, ..., zeta_d^{phi(d)-1},
/// i.e. a residue modulo the d-th cyclotomic polynomial.
///
/// Binary operations on elements of different orders lift both operands to the
/// lcm of the orders, so a default-constructed (order 1) element behaves as a
/// plain rational number inside any cyclotomic field.
class CycloElement {
 public:
  CycloElement();
  CycloElement(const Rational& r);  // NOLINT: rationals embed implicitly
  CycloElement(long v) : CycloElement(Rational(v)) {}  // NOLINT
  CycloElement(int order, std::vector<Rational> coeffs);

  // zeta_order^power, power taken modulo order.
  static CycloElement zeta(int order, long power = 1);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  // Rational value when every non-constant coordinate vanishes.
  std::optional<Rational> rational_value() const;

  // Same number expressed in Q(zeta_target); order() must divide target.
  CycloElement lift(int target) const;

  CycloElement inverse() const;

  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const CycloElement& o);
  CycloElement& operator/=(const CycloElement& o) { return *this *= o.inverse(); }
  CycloElement operator-() const;

  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const CycloElement& b) { return a *= b; }
  friend CycloElement operator/(CycloElement a, const CycloElement& b) { return a /= b; }
  friend bool operator==(const CycloElement& a, const CycloElement& b);
  friend bool operator!=(const CycloElement& a, const CycloElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  int order_;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const CycloElement& e) { return e.is_zero(); }

// Rewrites e inside the subfield Q(zeta_target) when it lies there.
// target_order must divide e.order() unless e is rational. Throws
// NotInSubfield otherwise.
CycloElement cyclo_reduce(const CycloElement& e, int target_order);

// cyclo_reduce(e, 1) as a Rational.
Rational cyclo_to_rational(const CycloElement& e);

}  // namespace chistar
