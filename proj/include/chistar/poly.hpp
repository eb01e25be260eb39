#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "chistar/real.hpp"

namespace chistar {

/// Sparse polynomial over Q in NV variables. Monomials are kept in
/// lexicographically descending exponent order and zero coefficients are never
/// stored. Variables are named X, Y, Z.
template <std::size_t NV>
class SparsePoly {
 public:
  using Exps = std::array<int, NV>;
  using Terms = std::map<Exps, Rational, std::greater<Exps>>;

  SparsePoly() = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add_term(const Exps& e, const Rational& c) {
    if (is_zero_coeff(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }
  void set(const Exps& e, const Rational& c) {
    terms_.erase(e);
    add_term(e, c);
  }

  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e;
        for (std::size_t k = 0; k < NV; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend SparsePoly operator*(const Rational& s, SparsePoly a) {
    if (is_zero_coeff(s)) return {};
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  // Partial derivative in one variable.
  SparsePoly derivative(std::size_t var) const {
    SparsePoly r;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exps f = e;
      f[var] -= 1;
      r.add_term(f, c * e[var]);
    }
    return r;
  }

  // Scales to a primitive integer polynomial whose first (lexicographically
  // greatest) term is positive.
  SparsePoly normalized() const {
    if (terms_.empty()) return *this;
    Integer den = 1, num = 0;
    for (const auto& [e, c] : terms_) {
      den = lcm(den, Integer(c.get_den()));
      num = gcd(num, Integer(c.get_num()));
    }
    Rational s(den, num);
    s.canonicalize();
    if (sgn(terms_.begin()->second) < 0) s = -s;
    return s * *this;
  }

  bool has_integer_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (c.get_den() != 1) return false;
    return true;
  }

  Rational evaluate(const std::array<Rational, NV>& x) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t k = 0; k < NV; ++k)
        for (int p = 0; p < e[k]; ++p) t *= x[k];
      s += t;
    }
    return s;
  }

  // Value and the largest monomial magnitude |c x^e| (for normalized residuals).
  std::pair<ComplexHP, Real> evaluate(const std::array<ComplexHP, NV>& x) const;

  // Normalized residual |P(x)| / max |c x^e|.
  Real residual(const std::array<ComplexHP, NV>& x) const {
    auto [v, m] = evaluate(x);
    if (m.is_zero()) return v.abs();
    return v.abs() / m;
  }

  std::string to_string() const;

 private:
  static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
  Terms terms_;
};

using BiPolynomial = SparsePoly<2>;
using TriPolynomial = SparsePoly<3>;

// Text format: header "bipoly N=<N>" / "tripoly N=<N>", then one
// "i j [k] : num/den" line per monomial, descending. load_poly throws
// ParseError (with the line number) on malformed input.
void save_poly(const BiPolynomial& p, long N, const std::string& path);
void save_poly(const TriPolynomial& p, long N, const std::string& path);
std::string format_poly(const BiPolynomial& p, long N);
std::string format_poly(const TriPolynomial& p, long N);
BiPolynomial parse_bipoly(const std::string& text, long* N = nullptr);
TriPolynomial parse_tripoly(const std::string& text, long* N = nullptr);
BiPolynomial load_bipoly(const std::string& path, long* N = nullptr);
TriPolynomial load_tripoly(const std::string& path, long* N = nullptr);

extern template class SparsePoly<2>;
extern template class SparsePoly<3>;

}  // namespace chistar
