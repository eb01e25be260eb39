#include "chistar/rational.hpp"

#include <numeric>

#include "chistar/errors.hpp"

namespace chistar {

Rational make_rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParseError("empty rational");
  bool neg = false;
  std::string_view v(s);
  if (v.front() == '+' || v.front() == '-') {
    neg = v.front() == '-';
    v.remove_prefix(1);
  }
  Rational out;
  if (auto slash = v.find('/'); slash != std::string_view::npos) {
    auto num = v.substr(0, slash), den = v.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("bad rational '" + s + "'");
    out = make_rational(Integer(std::string(num), 10), Integer(std::string(den), 10));
  } else {
    long exp10 = 0;
    if (auto e = v.find_first_of("eE"); e != std::string_view::npos) {
      auto ex = v.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex)) throw ParseError("bad exponent in '" + s + "'");
      exp10 = std::stol(std::string(ex)) * (eneg ? -1 : 1);
      v = v.substr(0, e);
    }
    std::string digits;
    if (auto dot = v.find('.'); dot != std::string_view::npos) {
      auto ip = v.substr(0, dot), fp = v.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
        throw ParseError("bad decimal '" + s + "'");
      digits = std::string(ip) + std::string(fp);
      exp10 -= static_cast<long>(fp.size());
    } else {
      if (!all_digits(v)) throw ParseError("bad rational '" + s + "'");
      digits = std::string(v);
    }
    Integer m(digits, 10);
    if (exp10 >= 0)
      out = Rational(m * pow10(static_cast<unsigned long>(exp10)));
    else
      out = make_rational(m, pow10(static_cast<unsigned long>(-exp10)));
  }
  return neg ? Rational(-out) : out;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

long gcd(long a, long b) { return std::gcd(a, b); }
long lcm(long a, long b) { return std::lcm(a, b); }

}  // namespace chistar
