#include <gtest/gtest.h>

#include "chistar/errors.hpp"
#include "chistar/modpoly.hpp"
#include "chistar/numeval.hpp"
#include "chistar/special.hpp"

using namespace chistar;

namespace {

constexpr long kPrec = 256;

double d(const Real& x) { return x.to_double(); }

const BiPolynomial& phi(long N) { return modular_polynomial(N); }

const TriPolynomial& psi(long N) {
  static std::map<long, TriPolynomial> cache;
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, build_psi(N, {})).first;
  return it->second;
}

ComplexHP at(const HPoint& p, long prec = kPrec) { return ComplexHP(p.first, p.second, prec); }

}  // namespace

TEST(Descriptor, GutExamples) {
  EXPECT_TRUE(is_gut(parse_descriptor("n 3\nrel 1 2 1 0 0 1\nrel 1 3 1 0 0 1\n")));
  EXPECT_FALSE(is_gut(parse_descriptor("n 2\nrel 1 2 1 0 1 2\n")));
  EXPECT_TRUE(is_gut(parse_descriptor("n 4\n")));
}

TEST(Descriptor, RoundTripAndBlocks) {
  std::string text = "n 4\nconst 3 0 1\nrel 1 2 4 0 0 2\nrel 1 4 1 1 0 3\n";
  SpecialDescriptor d = parse_descriptor(text);
  // stored primitive
  EXPECT_EQ(d.relations.at(2).second, (GL2Matrix{2, 0, 0, 1}));
  auto blocks = d.blocks();
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0], (std::vector<long>{1, 2, 4}));
  EXPECT_EQ(parse_descriptor(format_descriptor(d)).relations.at(4).second, d.relations.at(4).second);
  EXPECT_EQ(format_descriptor(parse_descriptor(format_descriptor(d))), format_descriptor(d));
}

TEST(Descriptor, Errors) {
  EXPECT_THROW(parse_descriptor("rel 1 2 1 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_descriptor("n 2\nfoo 1\n"), ParseError);
  try {
    parse_descriptor("n 2\n\nrel 1 2 1 x 0 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_descriptor("n 2\nrel 1 2 0 1 1 0\n"), ParseError);     // det < 0
  EXPECT_THROW(parse_descriptor("n 2\nrel 2 1 1 0 0 1\n"), InvalidArgument);  // base must be least
  EXPECT_THROW(parse_descriptor("n 2\nconst 2 0 -1\n"), InvalidArgument);
  EXPECT_THROW(parse_descriptor("n 2\nconst 2 0 1\nrel 1 2 1 0 0 1\n"), InvalidArgument);
}

TEST(Sampling, Shapes) {
  auto free = sample_points(parse_descriptor("n 1\n"), 7, 3);
  EXPECT_EQ(free.size(), 7u);
  for (const auto& p : free) EXPECT_GT(p[0].second, 0);

  for (const auto& p : sample_points(parse_descriptor("n 2\nrel 1 2 2 0 0 1\n"), 10, 1)) {
    EXPECT_EQ(p[1].first, 2 * p[0].first);
    EXPECT_EQ(p[1].second, 2 * p[0].second);
  }
  for (const auto& p : sample_points(parse_descriptor("n 2\nconst 2 0 1\n"), 5, 1)) {
    EXPECT_EQ(p[1], (HPoint{0, 1}));
  }
}

TEST(Sampling, RelationsHoldNumerically) {
  SpecialDescriptor d = parse_descriptor("n 3\nrel 1 2 1 0 1 2\nrel 1 3 3 1 0 1\n");
  for (const auto& p : sample_points(d, 10, 9)) {
    for (long s : {2L, 3L}) {
      ComplexHP lhs = d.relations.at(s).second.apply(at(p[0]));
      EXPECT_LT((lhs - at(p[static_cast<std::size_t>(s - 1)])).abs().to_double(), 1e-70);
    }
  }
}

TEST(VnMembership, LevelOne) {
  TriPolynomial psi1;
  psi1.add_term({1, 0, 0}, 1);
  psi1.add_term({0, 0, 1}, -1);
  auto r = vn_membership(phi(1), psi1, ComplexHP(Rational(1, 5), Rational(4, 3), kPrec), GL2Matrix::identity(), kPrec);
  EXPECT_LT(d(r.max()), 1e-70);
}

TEST(VnMembership, LevelTwoPoints) {
  ComplexHP tau(Rational(1, 10), Rational(11, 10), kPrec);
  EXPECT_LT(d(vn_membership(phi(2), psi(2), tau, {1, 0, 0, 2}, kPrec).max()), 1e-20);
  GL2Matrix gamma = GL2Matrix{1, 1, 0, 1} * GL2Matrix{0, -1, 1, 0};
  EXPECT_LT(d(vn_membership(phi(2), psi(2), tau, gamma * GL2Matrix{2, 0, 0, 1}, kPrec).max()), 1e-20);
}

TEST(VnMembership, AllOfDnAndTwists) {
  for (long N : {2L, 3L}) {
    VnReport r = vn_check(phi(N), psi(N), N, 10, kPrec, 0, 5);
    EXPECT_EQ(r.evaluations, 10u * (enumerate_DN(N).size() + 5));
    EXPECT_LT(d(r.worst.max()), hold_tolerance(kPrec)) << N;
  }
}

TEST(VnMembership, WrongLevelFails) {
  ComplexHP tau(Rational(1, 10), Rational(11, 10), kPrec);
  EXPECT_GT(d(vn_membership(phi(2), psi(2), tau, {1, 0, 0, 3}, kPrec).max()), 1e-5);
}

TEST(GutImages, ChiRelation) {
  for (const auto& [x, y] : sample_points(5, 4)) {
    ComplexHP tau(x, y, kPrec);
    for (const auto& g : enumerate_DN(2)) EXPECT_LT(d(chi_relation_residual(psi(2), tau, g, kPrec)), 1e-20);
  }
  ComplexHP tau(Rational(1, 10), Rational(11, 10), kPrec);
  EXPECT_GT(d(chi_relation_residual(psi(2), tau, {1, 0, 1, 2}, kPrec)), 1e-5);
}

TEST(RankProbe, LevelOneRepeatsCoordinates) {
  RankProbe p = plane_rank_probe(1, 8, kPrec);
  EXPECT_EQ(p.rank, 2u);
}

TEST(RankProbe, LevelTwoIsFullRank) {
  RankProbe p = plane_rank_probe(2, 8, kPrec);
  EXPECT_EQ(p.rank, 4u);
  EXPECT_EQ(p.distinct[0], 8u);
  EXPECT_THROW(plane_rank_probe(2, 7, kPrec), InvalidArgument);
}

TEST(Pushforward, ConstantAtI) {
  auto pts = pushforward(parse_descriptor("n 1\nconst 1 0 1\n"), 1, kPrec);
  ASSERT_EQ(pts.size(), 1u);
  ASSERT_EQ(pts[0].image.size(), 2u);
  EXPECT_LT(d((pts[0].image[0] - ComplexHP(1728.0, 0.0, kPrec)).abs()), 1e-30);
  EXPECT_LT(d(pts[0].image[1].abs()), 1e-30);
}

TEST(Pushforward, Diagonal) {
  for (const auto& p : pushforward(parse_descriptor("n 2\nrel 1 2 1 0 0 1\n"), 4, kPrec)) {
    EXPECT_LT(d((p.image[0] - p.image[2]).abs()), 1e-60);
    EXPECT_LT(d((p.image[1] - p.image[3]).abs()), 1e-60);
  }
}

TEST(Pushforward, ChiProjectionResultant) {
  auto pts = pushforward(parse_descriptor("n 2\nrel 1 2 2 0 0 1\n"), 5, kPrec, true, 1);
  for (const auto& p : pts) {
    ASSERT_EQ(p.image.size(), 2u);
    EXPECT_LT(d(chi_pair_resultant(phi(2), psi(2), p.image[0], p.image[1], kPrec)), 1e-20);
  }
  // A single level-2 relation leaves the chi*-pair unconstrained: the
  // eliminant vanishes identically, so independent pairs satisfy it too.
  for (const auto& p : pushforward(parse_descriptor("n 2\n"), 5, kPrec, true, 1))
    EXPECT_LT(d(chi_pair_resultant(phi(2), psi(2), p.image[0], p.image[1], kPrec)), 1e-20);
}

TEST(Roots, Aberth) {
  long prec = 200;
  // (x - 1)(x - 2)(x + 3i) = x^3 + (3i - 3) x^2 + (2 - 9i) x + 6i
  std::vector<ComplexHP> c{ComplexHP(0.0, 6.0, prec), ComplexHP(2.0, -9.0, prec), ComplexHP(-3.0, 3.0, prec),
                           ComplexHP(1.0, 0.0, prec)};
  auto roots = polynomial_roots(c, prec);
  ASSERT_EQ(roots.size(), 3u);
  for (const auto& want : {ComplexHP(1.0, 0.0, prec), ComplexHP(2.0, 0.0, prec), ComplexHP(0.0, -3.0, prec)}) {
    double best = 1;
    for (const auto& r : roots) best = std::min(best, d((r - want).abs()));
    EXPECT_LT(best, 1e-50);
  }
}
