#include <gtest/gtest.h>

#include <random>

#include "chistar/cyclo.hpp"
#include "chistar/errors.hpp"
#include "chistar/linsys.hpp"
#include "chistar/qpoly.hpp"
#include "chistar/rational.hpp"

using namespace chistar;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  return make_rational(num(rng), den(rng));
}

CycloElement random_cyclo(std::mt19937_64& rng, int order) {
  std::vector<Rational> c(static_cast<std::size_t>(euler_phi(order)));
  for (auto& x : c) x = random_rational(rng);
  return CycloElement(order, c);
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-3/4"), make_rational(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), make_rational(1, 8));
  EXPECT_EQ(parse_rational("-1.5e-3"), make_rational(-3, 2000));
  EXPECT_EQ(to_string(make_rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(make_rational(-4, 2)), "-2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, FieldIdentities) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    if (!is_zero(a)) EXPECT_EQ(a * (1 / a), Rational(1));
  }
}

TEST(QPolynomial, DivisionAndGcd) {
  QPolynomial a{-1, 0, 1};  // x^2 - 1
  QPolynomial b{1, 1};
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, (QPolynomial{-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, QPolynomial{-2, 2}), (QPolynomial{-1, 1}));
  EXPECT_THROW(divmod(a, QPolynomial{}), DivisionByZero);
  QPolynomial inv = inverse_mod(QPolynomial{0, 1}, QPolynomial{1, 0, 1});
  EXPECT_EQ(divmod(inv * QPolynomial{0, 1}, QPolynomial{1, 0, 1}).second, (QPolynomial{1}));
}

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (QPolynomial{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (QPolynomial{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (QPolynomial{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12).degree(), 4);
  // x^n - 1 = prod_{d | n} Phi_d(x)
  for (int n = 1; n <= 30; ++n) {
    QPolynomial prod{1};
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic_polynomial(d);
    EXPECT_EQ(prod, QPolynomial::monomial(1, n) - QPolynomial{1}) << n;
  }
  EXPECT_THROW(cyclotomic_polynomial(0), InvalidArgument);
}

TEST(Cyclotomic, Reduce) {
  auto z4 = CycloElement::zeta(4);
  EXPECT_EQ(cyclo_reduce(z4 * z4, 1), CycloElement(-1));
  EXPECT_EQ(cyclo_to_rational(z4 * z4), Rational(-1));
  auto z6 = CycloElement::zeta(6);
  EXPECT_EQ(cyclo_to_rational(z6 + CycloElement::zeta(6, 5)), Rational(1));
  EXPECT_THROW(cyclo_reduce(z4, 1), NotInSubfield);
  // zeta_12^4 = zeta_3 lives in Q(zeta_3)
  auto r = cyclo_reduce(CycloElement::zeta(12, 4), 3);
  EXPECT_EQ(r.order(), 3);
  EXPECT_EQ(r, CycloElement::zeta(3));
  // sqrt(-3) = zeta_3 - zeta_3^2 lies in Q(zeta_3) but not in Q
  EXPECT_THROW(cyclo_reduce(CycloElement::zeta(6) - CycloElement::zeta(6, 5), 1), NotInSubfield);
}

TEST(Cyclotomic, FieldLaws) {
  std::mt19937_64 rng(7);
  for (int order : {3, 4, 5, 8, 12, 15}) {
    for (int i = 0; i < 10; ++i) {
      auto a = random_cyclo(rng, order), b = random_cyclo(rng, order), c = random_cyclo(rng, order);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycloElement(1));
    }
  }
  // mixed orders lift to the lcm
  auto s = CycloElement::zeta(4) * CycloElement::zeta(3);
  EXPECT_EQ(s.order(), 12);
  EXPECT_EQ(s, CycloElement::zeta(12, 7));
  EXPECT_THROW(CycloElement().inverse(), DivisionByZero);
}

TEST(Cyclotomic, GaloisTrace) {
  // sum of primitive d-th roots of unity is mu(d)
  const int mu[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int d = 1; d <= 12; ++d) {
    CycloElement s;
    for (int k = 0; k < d; ++k)
      if (gcd(static_cast<long>(k), static_cast<long>(d)) == 1) s += CycloElement::zeta(d, k);
    EXPECT_EQ(cyclo_to_rational(s), Rational(mu[d])) << d;
  }
}

TEST(LinearAlgebra, NullspaceExamples) {
  LinearSystem a;
  a.ncols = 2;
  a.add_row({1, -1});
  auto ns = nullspace(a);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0][0], ns[0][1]);

  LinearSystem id;
  id.ncols = 3;
  id.add_row({1, 0, 0});
  id.add_row({0, 1, 0});
  id.add_row({0, 0, 1});
  EXPECT_TRUE(nullspace(id).empty());

  LinearSystem c;
  c.ncols = 3;
  c.add_row({2, 4, 6});
  EXPECT_EQ(nullspace(c).size(), 2u);
  EXPECT_EQ(rank(c), 1u);
}

TEST(LinearAlgebra, RandomNullspaceIsValidAndIndependent) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = static_cast<std::size_t>(dim(rng)), cols = static_cast<std::size_t>(dim(rng));
    LinearSystem s;
    s.ncols = cols;
    std::size_t base = std::max<std::size_t>(1, rows / 2);
    std::vector<RationalVector> gen;
    for (std::size_t r = 0; r < base; ++r) {
      RationalVector row(cols);
      for (auto& x : row) x = random_rational(rng);
      gen.push_back(row);
    }
    // dependent rows are combinations of the generators
    for (std::size_t r = 0; r < rows; ++r) {
      RationalVector row(cols);
      for (const auto& g : gen) {
        Rational w = random_rational(rng);
        for (std::size_t k = 0; k < cols; ++k) row[k] += w * g[k];
      }
      s.add_row(row);
    }
    auto ns = nullspace(s);
    EXPECT_EQ(ns.size() + rank(s), cols);
    for (const auto& v : ns)
      for (const auto& row : s.rows) {
        Rational dot;
        for (std::size_t k = 0; k < cols; ++k) dot += row[k] * v[k];
        EXPECT_TRUE(is_zero(dot));
      }
    LinearSystem basis;
    basis.ncols = cols;
    for (const auto& v : ns) basis.add_row(v);
    EXPECT_EQ(rank(basis), ns.size());
  }
}

TEST(LinearAlgebra, ModularRowSelectionMatchesRank) {
  std::vector<IntegerVector> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}, {1, 3, 4}, {5, 0, 1}};
  auto idx = independent_rows_mod_p(rows, 3);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 2, 4}));
}

TEST(LinearAlgebra, SolveLinear) {
  RationalVector x;
  ASSERT_TRUE(solve_linear({{2, 1}, {1, 3}}, {3, 5}, x));
  EXPECT_EQ(x[0], make_rational(4, 5));
  EXPECT_EQ(x[1], make_rational(7, 5));
  EXPECT_FALSE(solve_linear({{1, 1}, {2, 2}}, {1, 3}, x));
}
