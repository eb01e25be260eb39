#include "chistar/modpoly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>

#include "chistar/errors.hpp"
#include "chistar/hecke.hpp"
#include "chistar/linsys.hpp"
#include "chistar/modforms.hpp"
#include "chistar/qpoly.hpp"

namespace chistar {

namespace {

using ZSeries = PuiseuxSeries<Integer>;

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

int mobius(long n) {
  int r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

// Total pole order of prod_{g in D_N} j(g tau), i.e. sum a/d over D_N.
long dn_pole(long N) {
  Rational s = 0;
  for (const auto& g : enumerate_DN(N)) s += make_rational(g.a, g.d);
  if (!is_integer(s)) throw InvalidArgument("non-integral pole order");
  return s.get_num().get_si();
}

ZSeries integer_j(long trunc) {
  return derived_qexp(SeriesName::j, trunc).series.ycoeff(0).map([](const Rational& r) { return Integer(r.get_num()); });
}

// Writes c as a polynomial in j (coefficient of j^m at index m) by cancelling
// the most negative q-power repeatedly; every known coefficient of the
// remainder must vanish.
template <class C>
std::map<long, C> peel_by_j(PuiseuxSeries<C> c, const std::vector<PuiseuxSeries<C>>& jpow, long min_trunc) {
  std::map<long, C> out;
  if (c.truncation() < min_trunc) throw TruncationTooSmall("coefficient known only below q^" + std::to_string(c.truncation()));
  long top = c.is_zero() ? 0 : std::max(0L, -c.valuation());
  if (top >= static_cast<long>(jpow.size())) throw TruncationTooSmall("pole order exceeds the j-power table");
  for (long m = top; m >= 0; --m) {
    if (c.is_zero() || c.valuation() > -m) continue;
    C lead = c.coeff(-m);
    if (is_zero(lead)) continue;
    out[m] = lead;
    c = c - jpow[static_cast<std::size_t>(m)].scaled(lead);
  }
  if (!c.is_zero()) throw TruncationTooSmall("residual after j-expansion starts at q^" + std::to_string(c.valuation()));
  return out;
}

}  // namespace

std::vector<CycloAhm> dn_product(const RationalAhm& s, long N) {
  auto dn = enumerate_DN(N);
  std::vector<CycloAhm> factors;
  long big = 1;
  for (const auto& g : dn) {
    factors.push_back(act_series(g, s));
    big = std::max(big, ceil_div(factors.back().truncation(), factors.back().ramification()) + 1);
  }
  std::vector<CycloAhm> p{CycloAhm(CycloSeries::constant(CycloElement(1), big))};
  for (const auto& f : factors) {
    std::vector<std::optional<CycloAhm>> next(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + 1] = next[k + 1] ? *next[k + 1] + p[k] : p[k];
      CycloAhm t = -(p[k] * f);
      next[k] = next[k] ? *next[k] + t : t;
    }
    p.clear();
    for (auto& x : next) p.push_back(std::move(*x));
  }
  return p;
}

RationalAhm rationalize(const CycloAhm& s) {
  std::vector<RationalSeries> out;
  for (std::size_t k = 0; k <= s.y_degree(); ++k) {
    RationalSeries r;
    try {
      r = to_rational_series(s.ycoeff(k));
    } catch (const NotInSubfield&) {
      throw CancellationFailure("irrational coefficient survives the product over D_N (Y^" + std::to_string(k) + ")");
    }
    RationalSeries red = r.reduce_ramification();
    if (red.ramification() != 1)
      throw CancellationFailure("fractional q-power survives the product over D_N (Y^" + std::to_string(k) + ")");
    out.push_back(std::move(red));
  }
  return RationalAhm(std::move(out));
}

BiPolynomial build_phi(long N, long margin) {
  if (N < 1) throw InvalidArgument("build_phi needs N >= 1");
  if (margin < 1) throw InvalidArgument("build_phi needs a positive margin");
  const long tot = dn_pole(N);
  const long n = static_cast<long>(enumerate_DN(N).size());
  for (long need = margin + 2 * tot + 2;; need += tot + margin) {
    const long big = need + 4 * tot + 8;
    std::vector<ZSeries> prod{ZSeries::constant(Integer(1), big)};
    for (long a = 1; a <= N; ++a) {
      if (N % a) continue;
      const long d = N / a, g = std::gcd(a, d);
      long s = 0;
      for (long b = 0; b < d; ++b) s += std::gcd(b, g) == 1;
      // sum over b in the orbit of zeta_d^{bn}
      auto orbit_sum = [&](long nn) {
        long r = 0;
        for (long e = 1; e <= g; ++e)
          if (g % e == 0 && nn % (d / e) == 0) r += mobius(e) * (d / e);
        return r;
      };
      ZSeries j = integer_j(ceil_div(need * d, a) + s + 1);
      std::vector<ZSeries> psum{ZSeries{}};
      ZSeries pw = j;
      for (long m = 1; m <= s; ++m) {
        if (m > 1) pw = pw * j;
        long xval = floor_div(a * pw.valuation(), d), xtrunc = ceil_div(a * pw.truncation(), d);
        std::vector<Integer> co(static_cast<std::size_t>(std::max(0L, xtrunc - xval)));
        for (long k = pw.valuation(); k < pw.truncation(); ++k) {
          const Integer& c = pw.coeffs()[static_cast<std::size_t>(k - pw.valuation())];
          if (sgn(c) == 0) continue;
          long r = orbit_sum(k);
          if (r == 0) continue;
          if ((a * k) % d) throw CancellationFailure("fractional exponent in orbit power sum");
          co[static_cast<std::size_t>(a * k / d - xval)] += c * r;
        }
        psum.push_back(ZSeries(1, xval, std::move(co), xtrunc));
      }
      // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
      std::vector<ZSeries> e{ZSeries::constant(Integer(1), big)};
      for (long k = 1; k <= s; ++k) {
        std::optional<ZSeries> acc;
        for (long i = 1; i <= k; ++i) {
          ZSeries t = e[static_cast<std::size_t>(k - i)] * psum[static_cast<std::size_t>(i)];
          if (i % 2 == 0) t = -t;
          acc = acc ? *acc + t : t;
        }
        Integer kk = k;
        ZSeries ek = acc->map([&](const Integer& x) {
          if (!mpz_divisible_p(x.get_mpz_t(), kk.get_mpz_t()))
            throw CancellationFailure("non-integral elementary symmetric function");
          Integer q;
          mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), kk.get_mpz_t());
          return q;
        });
        e.push_back(std::move(ek));
      }
      // group polynomial X^s - e_1 X^{s-1} + ..., multiplied into the product
      std::vector<ZSeries> grp(static_cast<std::size_t>(s + 1));
      for (long k = 0; k <= s; ++k) grp[static_cast<std::size_t>(s - k)] = k % 2 ? -e[static_cast<std::size_t>(k)] : e[static_cast<std::size_t>(k)];
      std::vector<std::optional<ZSeries>> next(prod.size() + grp.size() - 1);
      for (std::size_t x = 0; x < prod.size(); ++x)
        for (std::size_t y = 0; y < grp.size(); ++y) {
          ZSeries t = prod[x] * grp[y];
          next[x + y] = next[x + y] ? *next[x + y] + t : t;
        }
      prod.clear();
      for (auto& x : next) prod.push_back(std::move(*x));
    }
    long known = big;
    for (const auto& c : prod) known = std::min(known, c.truncation());
    if (known < margin) continue;  // pessimistic bookkeeping lost too much; retry deeper
    ZSeries j = integer_j(known + tot + 2);
    std::vector<ZSeries> jpow{ZSeries::constant(Integer(1), known + tot + 2)};
    for (long m = 1; m <= tot; ++m) jpow.push_back(jpow.back() * j);
    BiPolynomial phi;
    for (long k = 0; k <= n; ++k) {
      auto terms = peel_by_j(prod[static_cast<std::size_t>(k)].truncated(known), jpow, margin);
      for (const auto& [m, c] : terms) phi.add_term({static_cast<int>(k), static_cast<int>(m)}, Rational(c));
    }
    return phi;
  }
}

BiPolynomial build_phi_product(long N, long margin) {
  const long tot = dn_pole(N);
  const long n = static_cast<long>(enumerate_DN(N).size());
  long base = (margin + 2 * tot + 2) * N;
  RationalAhm j = derived_qexp(SeriesName::j, base).series;
  auto prod = dn_product(j, N);
  std::vector<RationalSeries> coeffs;
  long known = base;
  for (const auto& c : prod) {
    coeffs.push_back(rationalize(c).ycoeff(0));
    known = std::min(known, coeffs.back().truncation());
  }
  RationalSeries js = j.ycoeff(0);
  std::vector<RationalSeries> jpow{RationalSeries::constant(1, known + tot + 2)};
  for (long m = 1; m <= tot; ++m) jpow.push_back(jpow.back() * js);
  BiPolynomial phi;
  for (long k = 0; k <= n; ++k) {
    auto terms = peel_by_j(coeffs[static_cast<std::size_t>(k)].truncated(known), jpow, margin);
    for (const auto& [m, c] : terms) phi.add_term({static_cast<int>(k), static_cast<int>(m)}, c);
  }
  return phi;
}

// ---- Psi_N ----

namespace {

enum class SolveStatus { ok, no_solution, insufficient };

struct Fraction2 {
  // numerator p(j, chi*) and denominator q(j, chi*), keyed by (u, v)
  std::map<std::pair<int, int>, Rational> p, q;
};

// Finds the solution of p(j, chi*) = c q(j, chi*) with the smallest q in the
// (total degree, lex) order, by multi-modular elimination and rational
// reconstruction, verified exactly against every equation.
SolveStatus solve_coefficient(const RationalAhm& c, const std::vector<std::vector<RationalAhm>>& mon, int B,
                              Fraction2& out, std::size_t& nullity_out, std::size_t& rows_out) {
  const std::size_t side = static_cast<std::size_t>((B + 1) * (B + 1));
  const std::size_t ncols = 2 * side;
  auto pcol = [&](int u, int v) { return static_cast<std::size_t>(u * (B + 1) + v); };

  std::vector<std::vector<RationalAhm>> qm(mon.size());
  long tvalid = c.truncation(), emin = 0;
  std::size_t ymax = 0;
  for (std::size_t u = 0; u < mon.size(); ++u)
    for (std::size_t v = 0; v < mon[u].size(); ++v) {
      qm[u].push_back(c * mon[u][v]);
      for (const RationalAhm* s : {&mon[u][v], static_cast<const RationalAhm*>(&qm[u][v])}) {
        tvalid = std::min(tvalid, s->truncation());
        ymax = std::max(ymax, s->y_degree());
        for (const auto& y : s->ycoeffs())
          if (!y.is_zero()) emin = std::min(emin, y.valuation());
      }
    }
  // rows ordered by q-exponent, then Y-power
  std::vector<IntegerVector> rows;
  for (long e = emin; e < tvalid; ++e)
    for (std::size_t m = 0; m <= ymax; ++m) {
      RationalVector row(ncols);
      bool any = false;
      for (std::size_t u = 0; u < mon.size(); ++u)
        for (std::size_t v = 0; v < mon[u].size(); ++v) {
          auto col = pcol(static_cast<int>(u), static_cast<int>(v));
          if (m <= mon[u][v].y_degree()) {
            Rational x = mon[u][v].ycoeff(m).coeff(e);
            if (sgn(x)) {
              row[col] = x;
              any = true;
            }
          }
          if (m <= qm[u][v].y_degree()) {
            Rational x = qm[u][v].ycoeff(m).coeff(e);
            if (sgn(x)) {
              row[side + col] = -x;
              any = true;
            }
          }
        }
      if (any) rows.push_back(clear_denominators(row));
    }
  rows_out = rows.size();
  if (rows.size() < ncols + 8) return SolveStatus::insufficient;

  // column order for the minimal-q choice: q monomials by descending
  // (total degree, j-degree), then the p block
  std::vector<std::size_t> order;
  for (int u = 0; u <= B; ++u)
    for (int v = 0; v <= B; ++v) order.push_back(side + pcol(u, v));
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    int ux = static_cast<int>((x - side) / (B + 1)), vx = static_cast<int>((x - side) % (B + 1));
    int uy = static_cast<int>((y - side) / (B + 1)), vy = static_cast<int>((y - side) % (B + 1));
    if (ux + vx != uy + vy) return ux + vx > uy + vy;
    return std::make_pair(ux, vx) > std::make_pair(uy, vy);
  });
  for (std::size_t k = 0; k < side; ++k) order.push_back(k);

  auto sel = independent_rows_mod_p(rows, ncols, modular_prime(0));
  std::vector<IntegerVector> sub;
  for (auto i : sel) sub.push_back(rows[i]);

  std::optional<std::size_t> nullity;
  std::vector<Integer> acc(ncols);
  Integer modulus = 1;
  std::optional<RationalVector> previous;
  for (std::size_t pi = 1; pi < 400; ++pi) {
    std::uint64_t p = modular_prime(pi);
    auto basis = nullspace_mod_p(sub, ncols, p);
    if (basis.empty()) return SolveStatus::no_solution;
    if (nullity && basis.size() > *nullity) continue;  // unlucky prime
    if (!nullity || basis.size() < *nullity) {
      nullity = basis.size();
      modulus = 1;
      std::fill(acc.begin(), acc.end(), Integer(0));
      previous.reset();
    }
    std::vector<ModVector> perm;
    for (const auto& b : basis) {
      ModVector r(ncols);
      for (std::size_t k = 0; k < ncols; ++k) r[k] = b[order[k]];
      perm.push_back(std::move(r));
    }
    auto piv = rref_mod_p(perm, ncols, p);
    if (piv.empty() || piv.back() >= side) return SolveStatus::insufficient;  // q part vanishes
    ModVector v(ncols);
    for (std::size_t k = 0; k < ncols; ++k) v[order[k]] = perm.back()[k];
    // CRT
    Integer pz;
    mpz_set_ui(pz.get_mpz_t(), p);
    Integer inv;
    {
      Integer mm = modulus % pz;
      mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
    }
    for (std::size_t k = 0; k < ncols; ++k) {
      Integer vk;
      mpz_set_ui(vk.get_mpz_t(), v[k]);
      Integer t = ((vk - acc[k] % pz) % pz + pz) % pz;
      t = (t * inv) % pz;
      acc[k] += modulus * t;
    }
    modulus *= pz;
    RationalVector cand(ncols);
    bool ok = true;
    for (std::size_t k = 0; k < ncols && ok; ++k) ok = rational_reconstruct(acc[k], modulus, cand[k]);
    if (!ok) continue;
    if (!previous || *previous != cand) {
      previous = cand;
      continue;
    }
    IntegerVector w = clear_denominators(cand);
    bool verified = true;
    Integer dot;
    for (const auto& row : rows) {
      dot = 0;
      for (std::size_t k = 0; k < ncols; ++k)
        if (sgn(w[k]) && sgn(row[k])) dot += row[k] * w[k];
      if (sgn(dot)) {
        verified = false;
        break;
      }
    }
    if (!verified) {
      previous.reset();
      continue;
    }
    out = {};
    int du = 0, dv = 0;
    for (int u = 0; u <= B; ++u)
      for (int vv = 0; vv <= B; ++vv) {
        const Rational& pc = cand[pcol(u, vv)];
        const Rational& qc = cand[side + pcol(u, vv)];
        if (sgn(pc)) out.p[{u, vv}] = pc;
        if (sgn(qc)) out.q[{u, vv}] = qc;
        if (sgn(pc) || sgn(qc)) {
          du = std::max(du, u);
          dv = std::max(dv, vv);
        }
      }
    nullity_out = *nullity;
    // every multiple h (p, q) with the degree bounds is also a solution; any
    // further nullspace dimension is an artefact of too few equations
    std::size_t expected = static_cast<std::size_t>((B - du + 1) * (B - dv + 1));
    if (*nullity != expected) return SolveStatus::insufficient;
    return SolveStatus::ok;
  }
  throw ReconstructionFailed("rational reconstruction of the nullspace vector did not stabilise");
}

std::optional<TriPolynomial> psi_attempt(long N, int B, long T, RecoveryStats& stats, SolveStatus& why) {
  RationalAhm chi_star = derived_qexp(SeriesName::chi_star, T).series;
  auto prod = dn_product(chi_star, N);
  const std::size_t n = prod.size() - 1;
  std::vector<RationalAhm> c;
  long tc = T, vc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    c.push_back(rationalize(prod[k]));
    tc = std::min(tc, c.back().truncation());
    for (const auto& y : c.back().ycoeffs())
      if (!y.is_zero()) vc = std::min(vc, y.valuation());
  }
  // monomials j^u chi*^v are only needed to the depth the coefficients reach
  long tm = std::min(T, tc - vc + 2);
  RationalAhm j = derived_qexp(SeriesName::j, T).series.truncated(tm);
  RationalAhm z = chi_star.truncated(tm);
  std::vector<RationalAhm> jp{RationalAhm(RationalSeries::constant(1, tm))}, zp{RationalAhm(RationalSeries::constant(1, tm))};
  for (int k = 1; k <= B; ++k) {
    jp.push_back(jp.back() * j);
    zp.push_back(zp.back() * z);
  }
  std::vector<std::vector<RationalAhm>> mon(static_cast<std::size_t>(B + 1));
  for (int u = 0; u <= B; ++u)
    for (int v = 0; v <= B; ++v) mon[static_cast<std::size_t>(u)].push_back(jp[static_cast<std::size_t>(u)] * zp[static_cast<std::size_t>(v)]);

  stats.nullity.assign(n, 0);
  stats.rows.assign(n, 0);
  std::vector<Fraction2> fr(n);
  for (std::size_t k = 0; k < n; ++k) {
    SolveStatus st = solve_coefficient(c[k], mon, B, fr[k], stats.nullity[k], stats.rows[k]);
    if (st != SolveStatus::ok) {
      why = st;
      return std::nullopt;
    }
  }
  // denominators must be polynomials in j alone
  std::vector<QPolynomial> q(n);
  QPolynomial l{1};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> co(static_cast<std::size_t>(B + 1));
    for (const auto& [e, x] : fr[k].q) {
      if (e.second != 0) throw NoSolution("denominator of an X-coefficient depends on chi*");
      co[static_cast<std::size_t>(e.first)] = x;
    }
    q[k] = QPolynomial(co);
    l = lcm(l, q[k]);
  }
  TriPolynomial psi;
  for (std::size_t k = 0; k < n; ++k) {
    auto [f, r] = divmod(l, q[k]);
    if (!r.is_zero()) throw NoSolution("inconsistent denominators");
    for (const auto& [e, x] : fr[k].p)
      for (int t = 0; t <= f.degree(); ++t)
        if (sgn(f.coeff(t))) psi.add_term({static_cast<int>(k), e.first + t, e.second}, x * f.coeff(t));
  }
  for (int t = 0; t <= l.degree(); ++t)
    if (sgn(l.coeff(t))) psi.add_term({static_cast<int>(n), t, 0}, l.coeff(t));
  why = SolveStatus::ok;
  return psi.normalized();
}

}  // namespace

TriPolynomial build_psi(long N, const RecoveryConfig& cfg, RecoveryStats* stats) {
  if (N < 1) throw InvalidArgument("build_psi needs N >= 1");
  const int n = static_cast<int>(enumerate_DN(N).size());
  int B = cfg.B > 0 ? cfg.B : 2 * n;
  long T = cfg.T > 0 ? cfg.T : 40 * N;
  if (T < 8) throw InvalidArgument("truncation must be at least 8");
  int b_esc = 0, t_esc = 0;
  RecoveryStats local;
  for (;;) {
    SolveStatus why = SolveStatus::ok;
    auto psi = psi_attempt(N, B, T, local, why);
    if (psi) {
      local.B = B;
      local.T = T;
      if (stats) *stats = local;
      return *psi;
    }
    if (why == SolveStatus::no_solution && b_esc < cfg.max_escalations) {
      B += n;
      ++b_esc;
    } else if (t_esc < cfg.max_escalations) {
      T *= 2;
      ++t_esc;
    } else {
      throw NoSolution("no rational expression for the X-coefficients within the escalation budget (B=" +
                       std::to_string(B) + ", T=" + std::to_string(T) + ")");
    }
  }
}

bool PsiSanity::ok() const { return deg_x_matches && content_one && squarefree_x; }

PsiSanity psi_sanity(const TriPolynomial& psi, long N) {
  PsiSanity s;
  s.deg_x = psi.degree(0);
  s.deg_y = psi.degree(1);
  s.deg_z = psi.degree(2);
  s.deg_x_matches = s.deg_x == static_cast<int>(enumerate_DN(N).size());
  s.y_dependent = s.deg_y >= 1;
  s.content_one = psi.has_integer_coefficients() && psi.normalized() == psi;
  // specialise Y, Z to random rationals and test gcd(P, P') = 1
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-97, 97), den(1, 31);
  s.squarefree_x = false;
  for (int attempt = 0; attempt < 3 && !s.squarefree_x; ++attempt) {
    Rational y = make_rational(num(rng), den(rng)), z = make_rational(num(rng), den(rng));
    std::vector<Rational> co(static_cast<std::size_t>(std::max(s.deg_x, 0) + 1));
    for (const auto& [e, c] : psi.terms()) {
      Rational t = c;
      for (int k = 0; k < e[1]; ++k) t *= y;
      for (int k = 0; k < e[2]; ++k) t *= z;
      co[static_cast<std::size_t>(e[0])] += t;
    }
    QPolynomial p(co);
    if (p.degree() != s.deg_x) continue;  // leading coefficient vanished here
    s.squarefree_x = gcd(p, p.derivative()).degree() == 0;
  }
  return s;
}

}  // namespace chistar

namespace chistar {

const BiPolynomial& modular_polynomial(long d) {
  if (d < 1 || d > kMaxPhiLevel) throw LevelUnavailable("Phi_" + std::to_string(d) + " is not available");
  static std::mutex m;
  static std::map<long, std::unique_ptr<BiPolynomial>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<BiPolynomial>(build_phi(d));
  return *slot;
}

}  // namespace chistar
