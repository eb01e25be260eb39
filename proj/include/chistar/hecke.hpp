#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chistar/ahm.hpp"
#include "chistar/real.hpp"

namespace chistar {

/// Integer 2x2 matrix (a b; c d). Acts on the upper half-plane by
/// tau -> (a tau + b)/(c tau + d) when the determinant is positive.
struct GL2Matrix {
  long a = 1, b = 0, c = 0, d = 1;

  static GL2Matrix identity() { return {}; }
  // Scales a rational matrix to a primitive integer one (positive multiple).
  static GL2Matrix primitive_from(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

  long det() const { return a * d - b * c; }
  bool is_primitive() const;
  bool is_upper_triangular() const { return c == 0; }
  ComplexHP apply(const ComplexHP& tau) const;
  // c tau + d
  ComplexHP automorphy(const ComplexHP& tau) const;

  friend GL2Matrix operator*(const GL2Matrix& x, const GL2Matrix& y);
  friend bool operator==(const GL2Matrix& x, const GL2Matrix& y) = default;
  // "a b / c d"
  std::string to_string() const;
};

// Matrices (a b; 0 d) with ad = N, 0 <= b < d, gcd(a, b, d) = 1, in (a, b) order.
std::vector<GL2Matrix> enumerate_DN(long N);

// g = gamma * g' with gamma in SL2(Z) and g' in D_N. Throws NotPrimitive.
std::pair<GL2Matrix, GL2Matrix> decompose_to_DN(const GL2Matrix& g);

// tau' = gamma tau in the closed standard fundamental domain. Throws
// DomainError for Im tau <= 0 and PrecisionLoss when the reduction does not
// terminate within the iteration cap.
std::pair<ComplexHP, GL2Matrix> reduce_fundamental(const ComplexHP& tau);

// f(tau) -> f(g tau) on q-expansions for upper-triangular g = (a b; 0 d).
template <class C>
CycloAhm act_series(const GL2Matrix& g, const AhmSeries<C>& s) {
  if (!g.is_upper_triangular() || g.a <= 0 || g.d <= 0)
    throw InvalidArgument("act_series needs (a b; 0 d) with a, d > 0");
  long b = ((g.b % g.d) + g.d) % g.d;
  return substitute_qaction(s, g.a, b, g.d);
}

}  // namespace chistar
