#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chistar/cyclo.hpp"
#include "chistar/errors.hpp"
#include "chistar/rational.hpp"

namespace chistar {

/// Truncated Puiseux series sum_k c_k q^{k/M} over an exact coefficient ring
/// (Rational or CycloElement).
///
/// Exponents are stored as integers in units of 1/M. The series is known
/// exactly for exponents below truncation()/M; everything at or above that is
/// unknown and never read. Coefficients are stored densely from the valuation
/// up to the truncation, and the first stored coefficient of a nonzero series
/// is nonzero.
/// A zero series has valuation == truncation and no stored coefficients.
template <class C>
class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;

  // Takes coefficients for exponents valuation, valuation+1, ... (units of 1/M)
  // and discards anything at or beyond the truncation.
  PuiseuxSeries(long ramification, long valuation, std::vector<C> coeffs, long truncation)
      : ram_(ramification), val_(valuation), trunc_(truncation), coeffs_(std::move(coeffs)) {
    if (ram_ < 1) throw InvalidArgument("ramification must be positive");
    if (trunc_ < val_) {
      coeffs_.clear();
      val_ = trunc_;
    }
    normalize();
  }

  static PuiseuxSeries zero(long truncation, long ramification = 1) {
    return PuiseuxSeries(ramification, truncation, {}, truncation);
  }
  static PuiseuxSeries constant(const C& c, long truncation, long ramification = 1) {
    return PuiseuxSeries(ramification, 0, {c}, truncation);
  }
  // c * q^{num/ramification}
  static PuiseuxSeries monomial(const C& c, long num, long truncation, long ramification = 1) {
    return PuiseuxSeries(ramification, num, {c}, truncation);
  }

  long ramification() const { return ram_; }
  long valuation() const { return val_; }
  long truncation() const { return trunc_; }
  const std::vector<C>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of q^{n/M} for integer n (units of 1/M).
  C coeff(long n) const {
    if (n >= trunc_)
      throw OutOfTruncation("exponent " + std::to_string(n) + "/" + std::to_string(ram_) +
                            " at or beyond truncation " + std::to_string(trunc_) + "/" + std::to_string(ram_));
    if (n < val_) return C{};
    return coeffs_[static_cast<std::size_t>(n - val_)];
  }

  // Coefficient at an arbitrary rational exponent.
  C coefficient_at(const Rational& exponent) const {
    Rational scaled = exponent * ram_;
    if (Rational(trunc_) <= scaled)
      throw OutOfTruncation("exponent " + to_string(exponent) + " at or beyond truncation " +
                            to_string(make_rational(trunc_, ram_)));
    if (!is_integer(scaled)) return C{};
    return coeff(scaled.get_num().get_si());
  }

  // Same series with exponents in units of 1/new_ram; ramification() must divide new_ram.
  PuiseuxSeries with_ramification(long new_ram) const {
    if (new_ram == ram_) return *this;
    if (new_ram % ram_ != 0) throw InvalidArgument("ramification must divide the target");
    long s = new_ram / ram_;
    std::vector<C> out;
    if (!coeffs_.empty()) {
      out.assign(static_cast<std::size_t>((static_cast<long>(coeffs_.size()) - 1) * s + 1), C{});
      for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<std::size_t>(s)] = coeffs_[i];
    }
    return PuiseuxSeries(new_ram, val_ * s, std::move(out), trunc_ * s);
  }

  // Smallest ramification representing every nonzero exponent; the truncation
  // is rounded down when it is not representable.
  PuiseuxSeries reduce_ramification() const {
    long g = ram_;
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i)
      if (!chistar::is_zero(coeffs_[i])) g = gcd(g, val_ + static_cast<long>(i));
    if (g <= 1) return *this;
    long t = floor_div(trunc_, g);
    std::vector<C> out;
    long v = is_zero() ? t : val_ / g;
    for (long n = val_; n < trunc_ && !coeffs_.empty(); n += g) {
      if (floor_div(n, g) >= t) break;
      out.push_back(coeffs_[static_cast<std::size_t>(n - val_)]);
    }
    return PuiseuxSeries(ram_ / g, v, std::move(out), t);
  }

  PuiseuxSeries truncated(long new_trunc) const {
    if (new_trunc >= trunc_) return *this;
    return PuiseuxSeries(ram_, val_, coeffs_, new_trunc);
  }

  template <class F>
  auto map(F&& f) const -> PuiseuxSeries<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return PuiseuxSeries<D>(ram_, val_, std::move(out), trunc_);
  }

  PuiseuxSeries operator-() const {
    return map([](const C& c) { return C(-c); });
  }

  PuiseuxSeries scaled(const C& s) const {
    return map([&](const C& c) { return C(c * s); });
  }

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.ram_ != b.ram_) {
      long m = lcm(a.ram_, b.ram_);
      return a.with_ramification(m) + b.with_ramification(m);
    }
    long t = std::min(a.trunc_, b.trunc_);
    long v = std::min(a.val_, b.val_);
    if (v >= t) return zero(t, a.ram_);
    std::vector<C> out(static_cast<std::size_t>(t - v));
    for (std::size_t i = 0; i < a.coeffs_.size() && a.val_ + static_cast<long>(i) < t; ++i)
      out[static_cast<std::size_t>(a.val_ - v) + i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size() && b.val_ + static_cast<long>(i) < t; ++i)
      out[static_cast<std::size_t>(b.val_ - v) + i] += b.coeffs_[i];
    return PuiseuxSeries(a.ram_, v, std::move(out), t);
  }

  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.ram_ != b.ram_) {
      long m = lcm(a.ram_, b.ram_);
      return a.with_ramification(m) * b.with_ramification(m);
    }
    // a = q^va (known below ta), b = q^vb (known below tb)
    long t = std::min(a.val_ + b.trunc_, b.val_ + a.trunc_);
    long v = a.val_ + b.val_;
    if (a.is_zero() || b.is_zero() || v >= t) return zero(t, a.ram_);
    auto n = static_cast<std::size_t>(t - v);
    std::vector<C> out(n);
    for (std::size_t i = 0; i < a.coeffs_.size() && i < n; ++i) {
      if (chistar::is_zero(a.coeffs_[i])) continue;
      std::size_t lim = std::min(b.coeffs_.size(), n - i);
      for (std::size_t k = 0; k < lim; ++k)
        if (!chistar::is_zero(b.coeffs_[k])) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
    }
    return PuiseuxSeries(a.ram_, v, std::move(out), t);
  }

  PuiseuxSeries pow(unsigned e) const {
    if (e == 0) return PuiseuxSeries(ram_, 0, {C(1)}, trunc_ - val_);
    PuiseuxSeries r = *this;
    for (unsigned k = 1; k < e; ++k) r = r * *this;
    return r;
  }

  // q d/dq: multiplies the coefficient of q^{n/M} by n/M.
  PuiseuxSeries theta() const {
    std::vector<C> out = coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!chistar::is_zero(out[i])) out[i] = out[i] * C(make_rational(val_ + static_cast<long>(i), ram_));
    return PuiseuxSeries(ram_, val_, std::move(out), trunc_);
  }

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.ram_ == b.ram_ && a.val_ == b.val_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

  // Exact equality of the coefficients both series know.
  friend bool agree(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries d = a - b;
    return d.is_zero();
  }

 private:
  static long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  void normalize() {
    coeffs_.resize(static_cast<std::size_t>(trunc_ - val_));
    std::size_t lead = 0;
    while (lead < coeffs_.size() && chistar::is_zero(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      val_ = trunc_;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<long>(lead);
    }
  }

  long ram_ = 1;
  long val_ = 0;
  long trunc_ = 0;
  std::vector<C> coeffs_;
};

using RationalSeries = PuiseuxSeries<Rational>;
using CycloSeries = PuiseuxSeries<CycloElement>;

// Multiplicative inverse; throws NonUnitLeading for a zero series.
template <class C>
PuiseuxSeries<C> series_invert(const PuiseuxSeries<C>& a) {
  if (a.is_zero()) throw NonUnitLeading("cannot invert a series with no known nonzero coefficient");
  const auto& c = a.coeffs();
  // relative precision is preserved: a known on [v, T) gives the inverse on [-v, T - 2v)
  long v = a.valuation();
  auto n = static_cast<std::size_t>(a.truncation() - v);
  std::vector<C> out(n);
  C inv0 = C(1) / c[0];
  out[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    C s{};
    for (std::size_t i = 1; i <= k && i < c.size(); ++i)
      if (!is_zero(c[i])) s += c[i] * out[k - i];
    out[k] = -(s * inv0);
  }
  return PuiseuxSeries<C>(a.ramification(), -v, std::move(out), a.truncation() - 2 * v);
}

}  // namespace chistar
