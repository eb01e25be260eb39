#include <gtest/gtest.h>

#include <random>

#include "chistar/ahm.hpp"

using namespace chistar;

namespace {

RationalSeries ser(std::vector<long> c, long val, long trunc, long ram = 1) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalSeries(ram, val, v, trunc);
}

RationalSeries random_series(std::mt19937_64& rng, long ram, long trunc) {
  std::uniform_int_distribution<long> val(-2, 1), c(-9, 9);
  long v = val(rng);
  std::vector<Rational> co;
  for (long k = v; k < trunc; ++k) co.emplace_back(c(rng));
  return RationalSeries(ram, v, co, trunc);
}

}  // namespace

TEST(Puiseux, BasicArithmetic) {
  auto a = ser({1, 1}, 0, 6), b = ser({1, -1}, 0, 6);
  EXPECT_EQ(a * b, ser({1, 0, -1}, 0, 6));
  auto qi = ser({1}, -1, 4);
  auto two = qi + qi;
  EXPECT_EQ(two.valuation(), -1);
  EXPECT_EQ(two.coeff(-1), Rational(2));
  auto h1 = ser({1, 1}, 0, 6, 2), h2 = ser({1, -1}, 0, 6, 2);
  auto p = (h1 * h2).reduce_ramification();
  EXPECT_EQ(p.ramification(), 1);
  EXPECT_EQ(p, ser({1, -1}, 0, 3));
}

TEST(Puiseux, TruncationIsPessimistic) {
  auto a = ser({1}, -1, 5);  // q^{-1}, known below q^5
  auto b = ser({1, 2, 3}, 0, 3);
  auto p = a * b;
  EXPECT_EQ(p.truncation(), 2);  // q^{-1} * O(q^3) = O(q^2)
  EXPECT_EQ((a + b).truncation(), 3);
  EXPECT_THROW(p.coeff(2), OutOfTruncation);
}

TEST(Puiseux, Invert) {
  auto g = series_invert(ser({1, -1}, 0, 8));
  for (long k = 0; k < 8; ++k) EXPECT_EQ(g.coeff(k), Rational(1));
  auto h = series_invert(ser({1, 1}, 1, 8));
  EXPECT_EQ(h.valuation(), -1);
  EXPECT_EQ(h.coeff(-1), Rational(1));
  EXPECT_EQ(h.coeff(0), Rational(-1));
  EXPECT_EQ(h.coeff(1), Rational(1));
  EXPECT_EQ(series_invert(ser({2}, 0, 3)).coeff(0), make_rational(1, 2));
  EXPECT_THROW(series_invert(RationalSeries::zero(4)), NonUnitLeading);
  // a * a^{-1} = 1 to the resulting truncation
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto a = random_series(rng, 1 + i % 3, 10);
    if (a.is_zero()) continue;
    auto one = a * series_invert(a);
    EXPECT_EQ(one.valuation(), 0);
    EXPECT_EQ(one.coeff(0), Rational(1));
    for (long k = 1; k < one.truncation(); ++k) EXPECT_TRUE(is_zero(one.coeff(k)));
  }
}

TEST(Puiseux, CoefficientAt) {
  auto s = ser({1, -24}, 0, 2);
  EXPECT_EQ(s.coefficient_at(1), Rational(-24));
  EXPECT_EQ(s.coefficient_at(make_rational(1, 2)), Rational(0));
  EXPECT_THROW(s.coefficient_at(5), OutOfTruncation);
}

TEST(Puiseux, RingLaws) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto a = random_series(rng, 1 + i % 2, 9), b = random_series(rng, 1, 9), c = random_series(rng, 2, 12);
    EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
    EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
    EXPECT_TRUE(agree(a * b, b * a));
  }
}

TEST(Puiseux, ThetaIsDerivation) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    auto a = random_series(rng, 2, 10), b = random_series(rng, 1, 10);
    EXPECT_TRUE(agree((a * b).theta(), a.theta() * b + a * b.theta()));
  }
}

TEST(QAction, Examples) {
  auto q = RationalAhm(ser({1}, 1, 6));
  auto r = substitute_qaction(q, 1, 1, 2);
  auto rs = to_rational_series(r.ycoeff(0));
  EXPECT_EQ(rs.coefficient_at(make_rational(1, 2)), Rational(-1));

  std::vector<RationalSeries> ys{RationalSeries::zero(4), ser({1}, 0, 4)};
  auto y = substitute_qaction(RationalAhm(ys), 2, 0, 1);
  EXPECT_EQ(to_rational_series(y.ycoeff(1)).coeff(0), make_rational(1, 2));

  auto qi = substitute_qaction(RationalAhm(ser({1}, -1, 4)), 1, 0, 2);
  auto qis = to_rational_series(qi.ycoeff(0));
  EXPECT_EQ(qis.coefficient_at(make_rational(-1, 2)), Rational(1));
  EXPECT_EQ(qis.ramification(), 2);

  auto sq = to_rational_series(substitute_qaction(q, 2, 0, 1).ycoeff(0));
  EXPECT_EQ(sq.valuation(), 2);
  EXPECT_EQ(sq.truncation(), 12);
}

TEST(QAction, Multiplicative) {
  std::mt19937_64 rng(21);
  for (auto [a, b, d] : {std::tuple{1L, 1L, 2L}, {1L, 2L, 3L}, {2L, 0L, 1L}, {1L, 3L, 4L}, {2L, 1L, 2L}}) {
    auto s = RationalAhm(random_series(rng, 1, 8)), t = RationalAhm(random_series(rng, 1, 8));
    auto lhs = substitute_qaction(s * t, a, b, d);
    auto rhs = substitute_qaction(s, a, b, d) * substitute_qaction(t, a, b, d);
    EXPECT_TRUE(agree(lhs.ycoeff(0), rhs.ycoeff(0)));
  }
}

TEST(QAction, SymmetrizationCancels) {
  std::mt19937_64 rng(33);
  for (long d : {2L, 3L, 4L, 5L}) {
    auto s = RationalAhm(random_series(rng, 1, 10));
    CycloAhm prod = substitute_qaction(s, 1, 0, d);
    for (long b = 1; b < d; ++b) prod = prod * substitute_qaction(s, 1, b, d);
    auto r = to_rational_series(prod.ycoeff(0));  // throws if irrational
    const auto& c = r.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i])) EXPECT_EQ((r.valuation() + static_cast<long>(i)) % d, 0) << "d=" << d;
  }
}
