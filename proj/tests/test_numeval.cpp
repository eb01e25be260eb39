#include <gtest/gtest.h>

#include "chistar/modpoly.hpp"
#include "chistar/numeval.hpp"

using namespace chistar;

namespace {

ComplexHP rho(long prec) {
  return ComplexHP(Real(make_rational(-1, 2), prec), sqrt(Real(Rational(3), prec)) / 2);
}

bool below(const Real& r, double tol) { return r < Real(tol, r.precision()); }

const TriPolynomial& psi2() {
  static TriPolynomial p = build_psi(2);
  return p;
}

}  // namespace

TEST(Real, PrecisionIsRaisedNotLowered) {
  Real a(Rational(1), 64), b(Rational(3), 256);
  EXPECT_EQ((a / b).precision(), 256);
  EXPECT_EQ((b * a).precision(), 256);
  auto [re, im] = ComplexHP::parse_exact("0.1+1.2i");
  EXPECT_EQ(re, make_rational(1, 10));
  EXPECT_EQ(im, make_rational(6, 5));
  EXPECT_EQ(ComplexHP::parse_exact("i").second, Rational(1));
  EXPECT_EQ(ComplexHP::parse_exact("-2i").second, Rational(-2));
  EXPECT_EQ(ComplexHP::parse_exact("1e-3-i").first, make_rational(1, 1000));
  EXPECT_THROW(ComplexHP::parse_exact("x+i"), ParseError);
}

TEST(Eval, ClassicalAnchors) {
  const long prec = 128;
  ComplexHP i = ComplexHP::i(prec);
  auto vi = eval_all(i, prec);
  EXPECT_TRUE(below((vi.j - ComplexHP(1728.0, 0.0, prec)).abs(), 1e-30));
  EXPECT_TRUE(below(vi.chi.abs(), 1e-30));
  EXPECT_TRUE(below(vi.chi_star.abs(), 1e-30));
  auto vr = eval_all(rho(prec), prec);
  EXPECT_TRUE(below(vr.j.abs(), 1e-30));
  EXPECT_TRUE(below(vr.chi_star.abs(), 1e-30));
  EXPECT_THROW(eval_all(ComplexHP(1.0, -1.0, prec), prec), DomainError);
  EXPECT_THROW(eval_fn("E8", i, prec), ParseError);
}

TEST(Eval, ModularityAndRepresentations) {
  const long prec = 192;
  std::mt19937_64 rng(3);
  for (const auto& [x, y] : sample_points(6, 9)) {
    ComplexHP tau(x, y, prec);
    GL2Matrix g = random_sl2(rng, 12);
    auto a = eval_all(tau, prec), b = eval_all(g.apply(tau), prec);
    EXPECT_TRUE(below((a.j - b.j).abs() / a.j.abs(), 1e-40));
    EXPECT_TRUE(below((a.chi_star - b.chi_star).abs() / a.chi_star.abs(), 1e-40));
    // chi* = chi - 3/(pi y) f
    Real c = Real(Rational(3), prec) / (Real::pi(prec) * tau.im());
    EXPECT_TRUE(below((a.chi_star - (a.chi - a.f * c)).abs() / a.chi.abs(), 1e-40));
  }
}

TEST(Eval, ReducedAndDirectSummationAgree) {
  const long prec = 160;
  ComplexHP tau(make_rational(3, 10), make_rational(1, 20), prec);
  auto a = eval_all(tau, prec, true), b = eval_all(tau, prec, false);
  EXPECT_TRUE(below((a.E2 - b.E2).abs() / a.E2.abs(), 1e-35));
  EXPECT_TRUE(below((a.Delta - b.Delta).abs() / a.Delta.abs(), 1e-35));
  EXPECT_TRUE(below((a.chi - b.chi).abs() / a.chi.abs(), 1e-35));
  EXPECT_LT(b.terms, 20000);
}

TEST(Eval, PrecisionDoublingShrinksResiduals) {
  ComplexHP tau64(make_rational(1, 10), make_rational(6, 5), 96);
  ComplexHP tau128(make_rational(1, 10), make_rational(6, 5), 192);
  GL2Matrix g{2, 1, 1, 1};
  auto r = [&](const ComplexHP& t, long p) {
    auto a = eval_all(t, p), b = eval_all(g.apply(t), p);
    return ((a.j - b.j).abs() / a.j.abs()).to_double();
  };
  double r1 = r(tau64, 96), r2 = r(tau128, 192);
  EXPECT_LT(r1, 1e-20);
  EXPECT_LT(r2, std::max(r1 * r1 * 1e10, 1e-45));
}

TEST(Laws, AllHold) {
  auto rep = verify_transformation_laws(6, 256, 0);
  EXPECT_TRUE(below(rep.e2_law, 1e-30)) << rep.e2_law.to_string();
  EXPECT_TRUE(below(rep.e2star_law, 1e-30)) << rep.e2star_law.to_string();
  EXPECT_TRUE(below(rep.chi_law, 1e-30)) << rep.chi_law.to_string();
}

TEST(Laws, InversionExample) {
  const long prec = 256;
  ComplexHP tau(Rational(0), Rational(2), prec);
  GL2Matrix s{0, -1, 1, 0};
  auto lhs = eval_all(s.apply(tau), prec, false), rhs = eval_all(tau, prec, false);
  ComplexHP w = s.automorphy(tau);
  ComplexHP six_i_pi(Real(prec), Real(Rational(6), prec) / Real::pi(prec));
  EXPECT_TRUE(below((lhs.E2 - (w * w * rhs.E2 - six_i_pi * w)).abs(), 1e-30));
  EXPECT_TRUE(below((lhs.E2star - w * w * rhs.E2star).abs(), 1e-30));
}

TEST(PsiIdentity, N1IsExact) {
  TriPolynomial x_minus_z;
  x_minus_z.add_term({1, 0, 0}, 1);
  x_minus_z.add_term({0, 0, 1}, -1);
  auto rep = verify_psi_identity(x_minus_z, 1, 3, 128, 0, 2);
  EXPECT_TRUE(below(rep.max_residual, 1e-30));
}

TEST(PsiIdentity, N2Certified) {
  auto rep = verify_psi_identity(psi2(), 2, 3, 256, 0, 2);
  EXPECT_TRUE(below(rep.max_residual, 1e-20)) << rep.max_residual.to_string();
  // the documented sample point
  const long prec = 256;
  ComplexHP tau(make_rational(1, 10), make_rational(6, 5), prec);
  auto base = eval_all(tau, prec);
  for (GL2Matrix g : {GL2Matrix{1, 1, 0, 2}, GL2Matrix{1, 0, 1, 1} * GL2Matrix{2, 0, 0, 1}}) {
    auto gv = eval_all(g.apply(tau), prec);
    EXPECT_TRUE(below(psi2().residual({gv.chi_star, base.j, base.chi_star}), 1e-20));
  }
}

TEST(ChiIdentity, Dichotomy) {
  auto holds = verify_chi_identity(psi2(), 2, {1, 1, 0, 2}, 4, 256);
  EXPECT_EQ(holds.verdict, Verdict::holds);
  auto fails = verify_chi_identity(psi2(), 2, {1, 0, 1, 2}, 10, 256);
  EXPECT_GE(fails.above_fail, 9u);
  TriPolynomial x_minus_z;
  x_minus_z.add_term({1, 0, 0}, 1);
  x_minus_z.add_term({0, 0, 1}, -1);
  EXPECT_EQ(verify_chi_identity(x_minus_z, 1, GL2Matrix::identity(), 3, 128).verdict, Verdict::holds);
}

TEST(Demo, InfinitelyManyValues) {
  auto rep = infinite_values_demo(2, 10, 256);
  ASSERT_EQ(rep.values.size(), 10u);
  EXPECT_TRUE(below(rep.max_difference, 1e-25)) << rep.max_difference.to_string();
  EXPECT_TRUE(rep.min_separation > Real(1e-3, 256));
  EXPECT_TRUE(rep.f_at_i_over_N > Real(1e-3, 256));
}
