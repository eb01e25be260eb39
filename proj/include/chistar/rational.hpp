#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chistar {

// GMP values are kept canonical by every gmpxx operator, so equality of two
// Rationals is plain structural equality.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "7", "-3/4", "0.125", "-1.5e-3" (exact decimal expansion).
Rational parse_rational(std::string_view text);

// "num/den", or "num" when den = 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
long gcd(long a, long b);
long lcm(long a, long b);

}  // namespace chistar
