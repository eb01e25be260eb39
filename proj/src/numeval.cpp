#include "chistar/numeval.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "chistar/errors.hpp"

namespace chistar {

namespace {

constexpr long kGuard = 64;

// sigma_1, sigma_3, sigma_5 for n < limit, grown on demand
struct SigmaTable {
  std::mutex m;
  std::vector<Integer> s1{0}, s3{0}, s5{0};

  void ensure(long limit) {
    std::lock_guard lock(m);
    long have = static_cast<long>(s1.size());
    if (have >= limit) return;
    long target = std::max(limit, 2 * have);
    s1.assign(static_cast<std::size_t>(target), 0);
    s3.assign(static_cast<std::size_t>(target), 0);
    s5.assign(static_cast<std::size_t>(target), 0);
    Integer d3, d5;
    for (long d = 1; d < target; ++d) {
      Integer dz = d;
      d3 = dz * dz * dz;
      d5 = d3 * dz * dz;
      for (long k = d; k < target; k += d) {
        s1[static_cast<std::size_t>(k)] += dz;
        s3[static_cast<std::size_t>(k)] += d3;
        s5[static_cast<std::size_t>(k)] += d5;
      }
    }
  }
};

SigmaTable& sigmas() {
  static SigmaTable t;
  return t;
}

ComplexHP cplx(long re, long im, long prec) { return ComplexHP(Rational(re), Rational(im), prec); }

// 6i/pi at the given precision
ComplexHP six_i_over_pi(long prec) { return ComplexHP(Real(prec), Real(Rational(6), prec) / Real::pi(prec)); }

}  // namespace

ModularValues eval_all(const ComplexHP& tau, long prec, bool reduce) {
  if (prec < 64) throw InvalidArgument("precision must be at least 64 bits");
  if (tau.im().sign() <= 0) throw DomainError("Im tau must be positive");
  ModularValues out;
  ComplexHP tp = tau;
  if (reduce) {
    auto [t, g] = reduce_fundamental(tau.with_precision(std::max(tau.precision(), prec + kGuard)));
    tp = t;
    out.gamma = g;
  }
  double y = tp.im().to_double();
  if (!(y > 1e-7)) throw PrecisionLoss("Im tau too small for direct summation");
  // log2 |q| and the number of terms: 504 n^6 |q|^n / (1 - |q|) < 2^-wp
  double lq = -2 * M_PI * y / std::log(2.0);
  double one_minus = 1 - std::exp2(lq);
  // largest term 504 n^5 |q|^n sets the cancellation guard for direct sums
  double nstar = 5 / (-lq * std::log(2.0));
  double peak = std::log2(504.0) + 5 * std::log2(std::max(nstar, 1.0)) + nstar * lq;
  long wp = prec + kGuard + static_cast<long>(std::max(0.0, std::ceil(peak)));
  long n = 1;
  auto tail_log2 = [&](long m) {
    return std::log2(504.0) + 6 * std::log2(static_cast<double>(m + 1)) + static_cast<double>(m + 1) * lq -
           std::log2(one_minus);
  };
  while (tail_log2(n) > -static_cast<double>(wp)) ++n;
  out.terms = n;
  out.tail_bound = std::exp2(tail_log2(n));
  sigmas().ensure(n + 1);

  ComplexHP z = tp.with_precision(wp);
  ComplexHP q = qparam(z);
  ComplexHP qn = q;
  ComplexHP s1(wp), s3(wp), s5(wp);
  const auto& t = sigmas();
  for (long k = 1; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    s1 += qn * Real(Rational(t.s1[idx]), wp);
    s3 += qn * Real(Rational(t.s3[idx]), wp);
    s5 += qn * Real(Rational(t.s5[idx]), wp);
    qn *= q;
  }
  ComplexHP one = cplx(1, 0, wp);
  ComplexHP e2 = one - s1 * 24, e4 = one + s3 * 240, e6 = one - s5 * 504;
  ComplexHP e43 = e4 * e4 * e4;
  ComplexHP delta = (e43 - e6 * e6) / cplx(1728, 0, wp);
  ComplexHP f = e4 * e6 / delta;
  ComplexHP j = e43 / delta;
  Real pi = Real::pi(wp);
  ComplexHP e2s = e2 - ComplexHP(Real(Rational(3), wp) / (pi * z.im()), Real(wp));
  ComplexHP chis = e2s * f;

  // transport from tp back to tau = delta tp with delta = gamma^{-1}
  const GL2Matrix& g = out.gamma;
  long cd = -g.c, dd = g.a;
  ComplexHP w = z * cd + cplx(dd, 0, wp);
  ComplexHP w2 = w * w;
  e2 = w2 * e2 - six_i_over_pi(wp) * w * cd;
  e4 = w2 * w2 * e4;
  e6 = w2 * w2 * w2 * e6;
  delta = (w2 * w2 * w2).pow(2) * delta;
  f = f / w2;
  Real ytau = tau.im().with_precision(wp);
  e2s = e2 - ComplexHP(Real(Rational(3), wp) / (pi * ytau), Real(wp));

  out.E2 = e2.with_precision(prec);
  out.E4 = e4.with_precision(prec);
  out.E6 = e6.with_precision(prec);
  out.E2star = e2s.with_precision(prec);
  out.Delta = delta.with_precision(prec);
  out.j = j.with_precision(prec);
  out.f = f.with_precision(prec);
  out.chi = (e2 * f).with_precision(prec);
  out.chi_star = chis.with_precision(prec);
  out.reduced_point = tp.with_precision(prec);
  return out;
}

EvalReport eval_fn(std::string_view name, const ComplexHP& tau, long prec) {
  static const char* names[] = {"E2", "E4", "E6", "E2star", "Delta", "j", "f", "chi", "chi_star"};
  int idx = -1;
  for (int k = 0; k < 9; ++k)
    if (name == names[k]) idx = k;
  if (idx < 0) throw ParseError("unknown function '" + std::string(name) + "'");
  ModularValues v = eval_all(tau, prec);
  const ComplexHP* vals[] = {&v.E2, &v.E4, &v.E6, &v.E2star, &v.Delta, &v.j, &v.f, &v.chi, &v.chi_star};
  return {*vals[idx], v.tail_bound, v.reduced_point};
}

double hold_tolerance(long prec) { return std::exp2(-static_cast<double>(prec) / 3); }

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "HOLDS";
    case Verdict::fails: return "FAILS";
    default: return "INDETERMINATE";
  }
}

GL2Matrix random_sl2(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  for (;;) {
    long c = e(rng), d = e(rng);
    if (std::gcd(c, d) != 1) continue;
    // a d - b c = 1 via the extended Euclidean algorithm
    long r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      long qt = r0 / r1;
      long tmp = r0 - qt * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - qt * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - qt * t1;
      t0 = t1;
      t1 = tmp;
    }
    // s0 d + t0 c = r0 = +-1
    long a = s0 * r0, b = -t0 * r0;
    // shift by multiples of (c, d) to keep entries small
    if (c != 0) {
      long k = a / c;
      a -= k * c;
      b -= k * d;
    } else if (d != 0) {
      long k = b / d;
      a -= k * c;
      b -= k * d;
    }
    GL2Matrix g{a, b, c, d};
    if (g.det() == 1 && std::labs(a) <= bound && std::labs(b) <= bound) return g;
  }
}

std::vector<std::pair<Rational, Rational>> sample_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> re(-500, 500), im(870, 1600);
  std::vector<std::pair<Rational, Rational>> out;
  while (out.size() < count) {
    Rational x = make_rational(re(rng), 1000), y = make_rational(im(rng), 1000);
    if (x * x + y * y < 1) continue;
    out.emplace_back(x, y);
  }
  return out;
}

PsiIdentityReport verify_psi_identity(const TriPolynomial& psi, long N, std::size_t samples, long prec,
                                      std::uint64_t seed, std::size_t twists) {
  PsiIdentityReport rep{Real(prec), 0};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto dn = enumerate_DN(N);
  for (const auto& [x, y] : sample_points(samples, seed)) {
    ComplexHP tau(x, y, prec);
    ModularValues base = eval_all(tau, prec);
    std::vector<GL2Matrix> gs = dn;
    std::uniform_int_distribution<std::size_t> pick(0, dn.size() - 1);
    for (std::size_t t = 0; t < twists; ++t) gs.push_back(random_sl2(rng, 5) * dn[pick(rng)]);
    for (const auto& g : gs) {
      ModularValues gv = eval_all(g.apply(tau), prec);
      Real r = psi.residual({gv.chi_star, base.j, base.chi_star});
      if (rep.max_residual < r) rep.max_residual = r;
      ++rep.evaluations;
    }
  }
  return rep;
}

ChiIdentityReport verify_chi_identity(const TriPolynomial& psi, long N, const GL2Matrix& g, std::size_t samples,
                                      long prec, std::uint64_t seed) {
  if (g.det() != N || !g.is_primitive()) throw NotPrimitive("g must be primitive with determinant N");
  ChiIdentityReport rep{Real(prec), Real(prec), Verdict::indeterminate, 0, 0};
  bool first = true;
  Real fail_tol(kFailTolerance, prec);
  for (const auto& [x, y] : sample_points(samples, seed)) {
    ComplexHP tau(x, y, prec);
    ModularValues base = eval_all(tau, prec);
    ModularValues gv = eval_all(g.apply(tau), prec);
    Real r = psi.residual({gv.chi, base.j, base.chi});
    if (first || rep.max_residual < r) rep.max_residual = r;
    if (first || r < rep.min_residual) rep.min_residual = r;
    if (r > fail_tol) ++rep.above_fail;
    first = false;
    ++rep.samples;
  }
  if (rep.max_residual < Real(hold_tolerance(prec), prec)) rep.verdict = Verdict::holds;
  else if (rep.min_residual > fail_tol) rep.verdict = Verdict::fails;
  return rep;
}

LawReport verify_transformation_laws(std::size_t samples, long prec, std::uint64_t seed) {
  LawReport rep{Real(prec), Real(prec), Real(prec), 0};
  std::mt19937_64 rng(seed ^ 0x51ed270b27a3c5d9ULL);
  auto rel = [&](const ComplexHP& l, const ComplexHP& r) {
    Real scale = max(max(l.abs(), r.abs()), Real(1.0, prec));
    return (l - r).abs() / scale;
  };
  Real min_im(2e-3, prec);
  for (const auto& [x, y] : sample_points(samples, seed)) {
    ComplexHP tau(x, y, prec);
    GL2Matrix g;
    ComplexHP gt(prec);
    do {
      g = random_sl2(rng, 20);
      gt = g.apply(tau);
    } while (gt.im() < min_im);
    ModularValues lhs = eval_all(gt, prec, false);
    ModularValues rhs = eval_all(tau, prec, false);
    ComplexHP w = g.automorphy(tau);
    ComplexHP k = six_i_over_pi(prec) * w * g.c;
    ComplexHP e2 = w * w * rhs.E2 - k;
    ComplexHP e2s = w * w * rhs.E2star;
    ComplexHP chi = rhs.chi - six_i_over_pi(prec) * (cplx(g.c, 0, prec) / w) * rhs.f;
    Real r1 = rel(lhs.E2, e2), r2 = rel(lhs.E2star, e2s), r3 = rel(lhs.chi, chi);
    if (rep.e2_law < r1) rep.e2_law = r1;
    if (rep.e2star_law < r2) rep.e2star_law = r2;
    if (rep.chi_law < r3) rep.chi_law = r3;
    ++rep.samples;
  }
  return rep;
}

DemoReport infinite_values_demo(long N, long n_max, long prec) {
  if (N < 2 || n_max < 2) throw InvalidArgument("infinite_values_demo needs N >= 2 and n_max >= 2");
  DemoReport rep{{}, Real(prec), Real(prec), Real(prec)};
  ComplexHP i = ComplexHP::i(prec);
  ComplexHP t = ComplexHP(Rational(0), make_rational(1, N), prec);
  ModularValues at = eval_all(t, prec);
  rep.f_at_i_over_N = at.f.abs();
  GL2Matrix g{N, 0, 0, 1};
  for (long n = 1; n <= n_max; ++n) {
    GL2Matrix gamma{1, -1, 1 - n * N, n * N};
    ComplexHP direct = eval_all((g * gamma).apply(i), prec).chi;
    long c = 1 - n * N;
    ComplexHP denom = t * c + cplx(n, 0, prec);
    ComplexHP formula = at.chi - six_i_over_pi(prec) * (cplx(c, 0, prec) / denom) * at.f;
    Real diff = (formula - direct).abs() / max(formula.abs(), Real(1.0, prec));
    if (rep.max_difference < diff) rep.max_difference = diff;
    rep.values.push_back({n, formula, direct, diff});
  }
  bool first = true;
  for (std::size_t a = 0; a < rep.values.size(); ++a)
    for (std::size_t b = a + 1; b < rep.values.size(); ++b) {
      Real d = (rep.values[a].formula - rep.values[b].formula).abs();
      if (first || d < rep.min_separation) rep.min_separation = d;
      first = false;
    }
  return rep;
}

}  // namespace chistar
