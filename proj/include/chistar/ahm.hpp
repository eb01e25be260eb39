#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "chistar/puiseux.hpp"

namespace chistar {

/// Polynomial in the formal symbol Y with truncated Puiseux-series
/// coefficients. Y stands for 3/(pi * Im tau), so an AhmSeries is the
/// q-expansion of an almost holomorphic modular form.
///
/// ycoeff(k) is the coefficient of Y^k. Trailing zero Y-coefficients are
/// dropped, but at least one (possibly zero) coefficient is always kept so the
/// truncation survives.
template <class C>
class AhmSeries {
 public:
  using Series = PuiseuxSeries<C>;

  AhmSeries() : y_{Series{}} {}
  AhmSeries(Series s) : y_{std::move(s)} {}  // NOLINT: holomorphic series embed
  explicit AhmSeries(std::vector<Series> ycoeffs) : y_(std::move(ycoeffs)) {
    if (y_.empty()) throw InvalidArgument("AhmSeries needs at least one Y-coefficient");
    harmonize();
  }

  const std::vector<Series>& ycoeffs() const { return y_; }
  const Series& ycoeff(std::size_t k) const { return y_.at(k); }
  std::size_t y_degree() const { return y_.size() - 1; }
  long truncation() const { return y_.front().truncation(); }
  long ramification() const { return y_.front().ramification(); }
  bool is_zero() const { return y_.size() == 1 && y_.front().is_zero(); }

  AhmSeries operator-() const {
    std::vector<Series> out;
    for (const auto& s : y_) out.push_back(-s);
    return AhmSeries(std::move(out));
  }

  AhmSeries scaled(const C& c) const {
    std::vector<Series> out;
    for (const auto& s : y_) out.push_back(s.scaled(c));
    return AhmSeries(std::move(out));
  }

  AhmSeries truncated(long t) const {
    std::vector<Series> out;
    for (const auto& s : y_) out.push_back(s.truncated(t));
    return AhmSeries(std::move(out));
  }

  friend AhmSeries operator+(const AhmSeries& a, const AhmSeries& b) {
    std::size_t n = std::max(a.y_.size(), b.y_.size());
    std::vector<Series> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k >= a.y_.size()) out.push_back(b.y_[k].truncated(a.truncation_in(b.ramification())));
      else if (k >= b.y_.size()) out.push_back(a.y_[k].truncated(b.truncation_in(a.ramification())));
      else out.push_back(a.y_[k] + b.y_[k]);
    }
    return AhmSeries(std::move(out));
  }

  friend AhmSeries operator-(const AhmSeries& a, const AhmSeries& b) { return a + (-b); }

  friend AhmSeries operator*(const AhmSeries& a, const AhmSeries& b) {
    std::vector<Series> out(a.y_.size() + b.y_.size() - 1);
    std::vector<bool> set(out.size(), false);
    for (std::size_t i = 0; i < a.y_.size(); ++i)
      for (std::size_t k = 0; k < b.y_.size(); ++k) {
        Series p = a.y_[i] * b.y_[k];
        if (set[i + k]) {
          out[i + k] = out[i + k] + p;
        } else {
          out[i + k] = std::move(p);
          set[i + k] = true;
        }
      }
    return AhmSeries(std::move(out));
  }

  AhmSeries pow(unsigned e) const {
    if (e == 0) {
      std::vector<Series> one{y_.front().pow(0)};
      return AhmSeries(std::move(one));
    }
    AhmSeries r = *this;
    for (unsigned k = 1; k < e; ++k) r = r * *this;
    return r;
  }

  friend bool operator==(const AhmSeries& a, const AhmSeries& b) { return a.y_ == b.y_; }

 private:
  // Truncation of this series when expressed in units of 1/ram (rounded down).
  long truncation_in(long ram) const {
    long t = truncation() * ram;
    long m = ramification();
    return t >= 0 ? t / m : -((-t + m - 1) / m);
  }

  // Common ramification and the pessimistic (minimum) truncation for every
  // Y-coefficient; trailing zero coefficients are dropped.
  void harmonize() {
    long m = 1;
    for (const auto& s : y_) m = lcm(m, s.ramification());
    long t = 0;
    bool first = true;
    for (auto& s : y_) {
      s = s.with_ramification(m);
      if (first || s.truncation() < t) t = s.truncation();
      first = false;
    }
    for (auto& s : y_) s = s.truncated(t);
    while (y_.size() > 1 && y_.back().is_zero()) y_.pop_back();
  }

  std::vector<Series> y_;
};

using RationalAhm = AhmSeries<Rational>;
using CycloAhm = AhmSeries<CycloElement>;

namespace detail {
inline CycloElement as_cyclo(const Rational& r) { return CycloElement(r); }
inline const CycloElement& as_cyclo(const CycloElement& e) { return e; }
}  // namespace detail

// tau -> (a tau + b)/d on a q-expansion: q^{n/M} becomes
// zeta_{dM}^{bn} q^{an/(dM)}, and Y becomes (d/a) Y.
template <class C>
CycloSeries substitute_qaction(const PuiseuxSeries<C>& s, long a, long b, long d) {
  if (a < 1 || d < 1 || b < 0 || b >= d) throw InvalidArgument("substitute_qaction needs a,d >= 1 and 0 <= b < d");
  long m = s.ramification();
  long new_ram = d * m;
  int zorder = static_cast<int>(new_ram);
  long v = s.valuation();
  const auto& c = s.coeffs();
  std::vector<CycloElement> out;
  if (!c.empty()) out.resize((c.size() - 1) * static_cast<std::size_t>(a) + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    long n = v + static_cast<long>(i);
    CycloElement coeff = detail::as_cyclo(c[i]);
    if (b != 0) coeff *= CycloElement::zeta(zorder, ((b * n) % zorder + zorder) % zorder);
    out[i * static_cast<std::size_t>(a)] = std::move(coeff);
  }
  return CycloSeries(new_ram, a * v, std::move(out), a * s.truncation());
}

template <class C>
CycloAhm substitute_qaction(const AhmSeries<C>& s, long a, long b, long d) {
  std::vector<CycloSeries> out;
  Rational scale = make_rational(d, a);
  Rational factor = 1;
  for (std::size_t k = 0; k <= s.y_degree(); ++k) {
    CycloSeries t = substitute_qaction(s.ycoeff(k), a, b, d);
    if (k > 0) t = t.scaled(CycloElement(factor));
    out.push_back(std::move(t));
    factor *= scale;
  }
  return CycloAhm(std::move(out));
}

// Rational coefficients of a cyclotomic series; throws NotInSubfield when a
// coefficient is irrational.
inline RationalSeries to_rational_series(const CycloSeries& s) {
  return s.map([](const CycloElement& e) { return cyclo_to_rational(e); });
}

inline CycloSeries to_cyclo_series(const RationalSeries& s) {
  return s.map([](const Rational& r) { return CycloElement(r); });
}

inline RationalAhm to_rational_ahm(const CycloAhm& s) {
  std::vector<RationalSeries> out;
  for (const auto& t : s.ycoeffs()) out.push_back(to_rational_series(t));
  return RationalAhm(std::move(out));
}

inline CycloAhm to_cyclo_ahm(const RationalAhm& s) {
  std::vector<CycloSeries> out;
  for (const auto& t : s.ycoeffs()) out.push_back(to_cyclo_series(t));
  return CycloAhm(std::move(out));
}

}  // namespace chistar
