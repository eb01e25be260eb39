#include "chistar/cm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chistar/errors.hpp"
#include "chistar/modforms.hpp"
#include "chistar/modpoly.hpp"
#include "chistar/numeval.hpp"

namespace chistar {

namespace {

constexpr double kLevelTolerance = 1e-10;

// log2 |x| for a nonzero rational (approximate)
double log2_abs(const Rational& x) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log2(std::fabs(mn)) + static_cast<double>(en) - std::log2(std::fabs(md)) - static_cast<double>(ed);
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

double log2_abs(const ComplexHP& z) {
  Real a = z.abs();
  if (a.is_zero()) return -1e9;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, a.get(), MPFR_RNDN);
  return std::log2(m) + static_cast<double>(e);
}

// Upper estimate (bits) of the largest term in any beta_{i,k}, i + k <= order.
long beta_growth_bits(const BiPolynomial& phi, double lj, int order) {
  double best = 0;
  for (const auto& [e, c] : phi.terms()) {
    double lc = log2_abs(c);
    for (int i = 0; i <= std::min(order, e[0]); ++i)
      for (int k = 0; i + k <= order && k <= e[1]; ++k) {
        double t = lc + std::log2(binomial(e[0], i).get_d()) + std::log2(binomial(e[1], k).get_d()) +
                   std::max(0.0, lj) * (e[0] - i + e[1] - k);
        best = std::max(best, t);
      }
  }
  return static_cast<long>(std::ceil(best));
}

template <class T, class Mul>
void fill_table(const BiPolynomial& phi, int order, const std::vector<T>& jpow,
                std::map<std::pair<int, int>, T>& out, const T& zero, Mul&& scale) {
  for (int i = 0; i <= order; ++i)
    for (int k = 0; i + k <= order; ++k) out.emplace(std::make_pair(i, k), zero);
  for (const auto& [e, c] : phi.terms()) {
    for (int i = 0; i <= std::min(order, e[0]); ++i)
      for (int k = 0; i + k <= order && k <= e[1]; ++k) {
        Rational w = c * Rational(binomial(e[0], i) * binomial(e[1], k));
        out[{i, k}] += scale(w, jpow[static_cast<std::size_t>(e[0] - i + e[1] - k)]);
      }
  }
}

}  // namespace

ComplexHP QuadraticPoint::tau(long prec) const {
  long wp = prec + 32;
  Real re(Rational(-B, 2 * A), wp);
  Real im = sqrt(Real(Rational(-D()), wp)) / Real(Rational(2 * A), wp);
  return ComplexHP(re, im).with_precision(prec);
}

std::vector<QuadraticPoint> reduced_forms(long D) {
  if (D >= 0 || ((D % 4) + 4) % 4 > 1)
    throw InvalidDiscriminant("discriminant " + std::to_string(D) + " must be negative and 0 or 1 mod 4");
  std::vector<QuadraticPoint> out;
  for (long A = 1; 3 * A * A <= -D; ++A)
    for (long B = -A + 1; B <= A; ++B) {
      if (((B - D) % 2) != 0) continue;
      long num = B * B - D;
      if (num % (4 * A) != 0) continue;
      long C = num / (4 * A);
      if (C < A) continue;
      if (C == A && B < 0) continue;
      if (std::gcd(std::gcd(A, std::labs(B)), C) != 1) continue;
      out.push_back({A, B, C});
    }
  return out;
}

GL2Matrix fixing_matrix(const QuadraticPoint& p) {
  long g = std::gcd(std::gcd(std::labs(p.B), 2 * p.C), 2 * p.A);
  return {-p.B / g, -2 * p.C / g, 2 * p.A / g, p.B / g};
}

LevelChoice select_level(const QuadraticPoint& p, long prec) {
  GL2Matrix prim = fixing_matrix(p);
  GL2Matrix full{-p.B, -2 * p.C, 2 * p.A, p.B};
  std::vector<GL2Matrix> candidates{prim};
  if (!(full == prim)) candidates.push_back(full);
  ComplexHP j = eval_fn("j", p.tau(prec), prec).value;
  LevelChoice choice;
  for (const auto& m : candidates) {
    long d = m.det();
    // every point is fixed at level 1, so it certifies nothing
    if (d == 1) continue;
    Real r(prec);
    try {
      // against max(1, largest monomial): near j = 0 all monomials are tiny
      auto [v, mono] = modular_polynomial(d).evaluate(std::array<ComplexHP, 2>{j, j});
      r = v.abs() / max(Real(1.0, prec), mono);
    } catch (const LevelUnavailable&) {
      continue;
    }
    choice.tried.emplace_back(d, r);
    if (!choice.certified && r.to_double() < kLevelTolerance) {
      choice.matrix = m;
      choice.d = d;
      choice.residual = r;
      choice.certified = true;
    }
  }
  if (!choice.certified) {
    std::string msg = "no fixing matrix passes the Phi_d(j, j) certificate";
    for (const auto& [d, r] : choice.tried) msg += "; d=" + std::to_string(d) + " residual " + r.to_string(4);
    throw LevelUnavailable(msg);
  }
  return choice;
}

BetaTable beta_table(long d, const ComplexHP& j0, int max_order, long prec) {
  const BiPolynomial& phi = modular_polynomial(d);
  long wp = prec + std::max(0L, beta_growth_bits(phi, log2_abs(j0), max_order)) + 64;
  int deg = phi.degree(0) + phi.degree(1);
  ComplexHP z = j0.with_precision(std::max(wp, j0.precision()));
  std::vector<ComplexHP> jpow{ComplexHP(Rational(1), Rational(0), z.precision())};
  for (int k = 1; k <= deg; ++k) jpow.push_back(jpow.back() * z);
  std::map<std::pair<int, int>, ComplexHP> all;
  fill_table(phi, max_order, jpow, all, ComplexHP(0.0, 0.0, z.precision()),
             [&](const Rational& w, const ComplexHP& x) { return x * Real(w, z.precision()); });
  BetaTable t;
  t.d = d;
  t.max_order = max_order;
  t.center = j0;
  for (auto& [ik, v] : all) {
    if (ik == std::make_pair(0, 0)) t.value_at_center = v.with_precision(prec);
    else t.beta.emplace(ik, v.with_precision(prec));
  }
  return t;
}

BetaTable beta_table(long d, const Rational& j0, int max_order) {
  const BiPolynomial& phi = modular_polynomial(d);
  int deg = phi.degree(0) + phi.degree(1);
  std::vector<Rational> jpow{Rational(1)};
  for (int k = 1; k <= deg; ++k) jpow.push_back(jpow.back() * j0);
  std::map<std::pair<int, int>, Rational> all;
  fill_table(phi, max_order, jpow, all, Rational(0), [](const Rational& w, const Rational& x) { return w * x; });
  BetaTable t;
  t.d = d;
  t.max_order = max_order;
  t.center = ComplexHP(j0, Rational(0), 256);
  for (auto& [ik, v] : all) {
    ComplexHP c(v, Rational(0), 256);
    if (ik == std::make_pair(0, 0)) {
      t.value_at_center = c;
    } else {
      t.beta.emplace(ik, c);
      t.exact.emplace(ik, v);
    }
  }
  return t;
}

bool is_three_odd_square(long d) {
  if (d <= 0 || d % 3 != 0) return false;
  long m = d / 3;
  long k = std::lround(std::sqrt(static_cast<double>(m)));
  while (k * k > m) --k;
  while ((k + 1) * (k + 1) <= m) ++k;
  return k * k == m && k % 2 == 1;
}

ComplexHP direct_psi(const ComplexHP& tau, long prec) {
  ModularValues v = eval_all(tau, prec);
  if (v.E6.is_zero()) throw FormulaPole("E6 vanishes at tau");
  return v.E2star * v.E4 / v.E6;
}

MasserResult masser_evaluate(const QuadraticPoint& p, long prec) {
  ComplexHP tau = p.tau(prec);
  ComplexHP j = eval_fn("j", tau, prec).value;
  Real tol = pow2(-prec / 2, prec);
  ComplexHP shift = j - ComplexHP(1728.0, 0.0, prec);
  if (shift.abs() < tol * Real(1728.0, prec)) throw FormulaPole("j(tau) = 1728");
  if (j.abs() < tol) throw SmallDenominator("j(tau) = 0: the beta terms carry a factor j");

  LevelChoice level = select_level(p, prec);
  const BiPolynomial& phi = modular_polynomial(level.d);
  // the paper's criterion is on the discriminant of tau; keyed on the level
  // instead it would misroute e.g. D = -12 (level 3), where p is correct
  bool q_case = uses_q_formula(p);
  int order = q_case ? 4 : 2;
  // the Taylor coefficients lose as many bits as their largest term has
  long extra = std::max(0L, beta_growth_bits(phi, log2_abs(j), order)) + 32;
  long wp = prec + extra;
  ComplexHP jw = eval_fn("j", p.tau(wp), wp).value;
  BetaTable bt = beta_table(level.d, jw, order, wp);

  // |beta01| against its largest term
  Real scale = pow2(beta_growth_bits(phi, log2_abs(jw), 1), wp);
  if (bt.at(0, 1).abs() < scale * pow2(-prec / 2, wp)) throw SmallDenominator("beta_{0,1} vanishes");

  ComplexHP num = q_case ? bt.at(4, 0) - bt.at(3, 1) + bt.at(2, 2) - bt.at(1, 3) + bt.at(0, 4)
                         : bt.at(2, 0) - bt.at(1, 1) + bt.at(0, 2);
  ComplexHP c1728(1728.0, 0.0, wp), c6912(6912.0, 0.0, wp);
  ComplexHP extra_term = 3 * (7 * jw - c6912) / (2 * (jw - c1728));
  ComplexHP raw = 9 * jw * num / bt.at(0, 1) + extra_term;
  MasserResult r;
  r.raw = raw.with_precision(prec);
  r.psi = (raw * Real(Rational(2, 3), wp)).with_precision(prec);
  r.level = level.d;
  r.q_case = q_case;
  r.selector_mismatch = q_case != is_three_odd_square(level.d);
  return r;
}

ComplexHP masser_psi(const QuadraticPoint& p, long prec) { return masser_evaluate(p, prec).psi; }

ComplexHP chi_star_cm(const QuadraticPoint& p, long prec) {
  ComplexHP psi = masser_psi(p, prec);
  ComplexHP j = eval_fn("j", p.tau(prec), prec).value;
  return psi * (j - ComplexHP(1728.0, 0.0, prec));
}

BridgeReport certify_chi_star_bridge(std::size_t samples, long prec, std::uint64_t seed, long series_trunc) {
  BridgeReport rep;
  long T = series_trunc;
  RationalAhm chis = derived_qexp(SeriesName::chi_star, T).series;
  RationalSeries e2 = eisenstein_qexp(2, T), e4 = eisenstein_qexp(4, T), e6 = eisenstein_qexp(6, T);
  RationalAhm Y(std::vector<RationalSeries>{RationalSeries::zero(T), RationalSeries::constant(Rational(1), T)});
  RationalAhm lhs = chis * RationalAhm(e4.pow(3) - e6.pow(2));
  RationalAhm rhs = (RationalAhm(e2) - Y) * RationalAhm(e4 * e6).scaled(Rational(1728));
  RationalAhm diff = lhs - rhs;
  rep.series_identity = diff.is_zero() && diff.truncation() >= T - 2;

  rep.max_residual = Real(0.0, prec);
  Real third_pi = Real::pi(prec + 32) / 3;
  for (const auto& [x, y] : sample_points(samples, seed)) {
    // Im tau = y pi/3 keeps the sample points away from CM points
    ComplexHP tau(Real(x, prec + 32), Real(y, prec + 32) * third_pi);
    ModularValues v = eval_all(tau.with_precision(prec), prec);
    ComplexHP psi = v.E2star * v.E4 / v.E6;
    ComplexHP bridge = psi * (v.j - ComplexHP(1728.0, 0.0, prec));
    Real r = (v.chi_star - bridge).abs() / max(Real(1.0, prec), v.chi_star.abs());
    rep.max_residual = max(rep.max_residual, r);
    ++rep.samples;
  }
  return rep;
}

std::optional<Rational> reconstruct_rational(const Real& x, const Integer& max_den, const Real& tol) {
  long prec = x.precision();
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Real r = x;
  for (int step = 0; step < 4 * prec; ++step) {
    Integer a = r.floor();
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational cand(h1, k1);
    cand.canonicalize();
    if (abs(x - Real(cand, prec)) <= tol) return cand;
    Real frac = r - Real(Rational(a), prec);
    if (frac.is_zero()) break;
    r = Real(1.0, prec) / frac;
  }
  return std::nullopt;
}

namespace {

std::vector<ComplexHP> elementary_symmetric(const std::vector<ComplexHP>& xs, long prec) {
  std::vector<ComplexHP> e{ComplexHP(1.0, 0.0, prec)};
  for (const auto& x : xs) {
    e.push_back(ComplexHP(0.0, 0.0, prec));
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += e[k - 1] * x;
  }
  e.erase(e.begin());
  return e;
}

}  // namespace

OrbitReport galois_orbit_check(long D, long prec) {
  OrbitReport rep;
  rep.D = D;
  std::vector<ComplexHP> js, cs;
  for (const auto& f : reduced_forms(D)) {
    PointReport pr;
    pr.form = f;
    pr.tau = f.tau(prec);
    ModularValues v = eval_all(pr.tau, prec);
    pr.j = v.j;
    pr.chi_star = v.chi_star;
    pr.direct = v.E6.is_zero() ? ComplexHP(0.0, 0.0, prec) : v.E2star * v.E4 / v.E6;
    try {
      pr.level = select_level(f, prec);
    } catch (const Error& e) {
      pr.level_error = std::string(e.kind());
    }
    try {
      MasserResult m = masser_evaluate(f, prec);
      pr.masser = m.psi;
      pr.masser_diff = (m.psi - pr.direct).abs() / max(Real(1.0, prec), pr.direct.abs());
    } catch (const Error& e) {
      pr.masser_error = std::string(e.kind());
    }
    js.push_back(pr.j);
    cs.push_back(pr.chi_star);
    rep.points.push_back(std::move(pr));
  }
  rep.j_symmetric = elementary_symmetric(js, prec);
  rep.j_integrality = Real(0.0, prec);
  for (const auto& e : rep.j_symmetric) {
    Real d = abs(e.re() - Real(Rational(e.re().round()), prec));
    rep.j_integrality = max(rep.j_integrality, max(d, abs(e.im())));
  }
  rep.chi_symmetric = elementary_symmetric(cs, prec);
  rep.chi_imag = Real(0.0, prec);
  Real tol = pow2(-prec / 2, prec);
  for (const auto& e : rep.chi_symmetric) {
    rep.chi_imag = max(rep.chi_imag, abs(e.im()));
    Real t = tol * max(Real(1.0, prec), abs(e.re()));
    rep.chi_rational.push_back(reconstruct_rational(e.re(), Integer("1000000000000"), t));
  }
  return rep;
}

}  // namespace chistar
