#include "chistar/linsys.hpp"

#include <mutex>
#include <utility>

#include "chistar/errors.hpp"

namespace chistar {

void LinearSystem::add_row(RationalVector row) {
  if (row.size() != ncols) throw InvalidArgument("row length does not match ncols");
  rows.push_back(std::move(row));
}

IntegerVector clear_denominators(const RationalVector& row) {
  Integer den = 1;
  for (const auto& x : row)
    if (x.get_den() != 1) den = lcm(den, x.get_den());
  IntegerVector out(row.size());
  Integer content = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = row[i].get_num() * (den / row[i].get_den());
    if (out[i] != 0) content = gcd(content, out[i]);
  }
  if (content > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
  return out;
}

std::vector<std::size_t> bareiss_echelon(std::vector<IntegerVector>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Integer prev = 1, t1, t2;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (sgn(m[i][col]) == 0) continue;
      if (best == m.size() || mpz_cmpabs(m[i][col].get_mpz_t(), m[best][col].get_mpz_t()) > 0) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    const IntegerVector& piv = m[r];
    const Integer& p = piv[col];
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      IntegerVector& row = m[i];
      bool lead_zero = sgn(row[col]) == 0;
      for (std::size_t j = col + 1; j < ncols; ++j) {
        // row[j] = (p * row[j] - row[col] * piv[j]) / prev, exact by Sylvester's identity
        mpz_mul(t1.get_mpz_t(), p.get_mpz_t(), row[j].get_mpz_t());
        if (!lead_zero) {
          mpz_mul(t2.get_mpz_t(), row[col].get_mpz_t(), piv[j].get_mpz_t());
          mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        }
        mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    }
    prev = p;
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

std::vector<RationalVector> integer_nullspace(std::vector<IntegerVector> rows, std::size_t ncols) {
  auto pivots = bareiss_echelon(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(ncols);
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      std::size_t pc = pivots[k];
      Rational s = 0;
      for (std::size_t c = pc + 1; c < ncols; ++c)
        if (sgn(x[c]) != 0 && sgn(rows[k][c]) != 0) s += rows[k][c] * x[c];
      if (sgn(s) != 0) {
        x[pc] = -s / rows[k][pc];
      }
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RationalVector> nullspace(const LinearSystem& sys) {
  std::vector<IntegerVector> rows;
  rows.reserve(sys.rows.size());
  for (const auto& r : sys.rows) {
    if (r.size() != sys.ncols) throw InvalidArgument("row length does not match ncols");
    rows.push_back(clear_denominators(r));
  }
  return integer_nullspace(std::move(rows), sys.ncols);
}

std::size_t rank(const LinearSystem& sys) {
  std::vector<IntegerVector> rows;
  for (const auto& r : sys.rows) rows.push_back(clear_denominators(r));
  return bareiss_echelon(rows, sys.ncols).size();
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::size_t> independent_rows_mod_p(const std::vector<IntegerVector>& rows, std::size_t ncols,
                                                std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> basis_pivot, chosen;
  std::vector<std::uint64_t> v(ncols);
  for (std::size_t idx = 0; idx < rows.size() && basis.size() < ncols; ++idx) {
    for (std::size_t c = 0; c < ncols; ++c) v[c] = mpz_fdiv_ui(rows[idx][c].get_mpz_t(), p);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::uint64_t f = v[basis_pivot[b]];
      if (f == 0) continue;
      const auto& br = basis[b];
      for (std::size_t c = 0; c < ncols; ++c) {
        if (br[c] == 0) continue;
        std::uint64_t t = mulmod(f, br[c], p);
        v[c] = v[c] >= t ? v[c] - t : v[c] + p - t;
      }
    }
    std::size_t pc = ncols;
    for (std::size_t c = 0; c < ncols; ++c)
      if (v[c] != 0) {
        pc = c;
        break;
      }
    if (pc == ncols) continue;
    std::uint64_t inv = powmod(v[pc], p - 2, p);
    for (auto& x : v) x = mulmod(x, inv, p);
    basis.push_back(v);
    basis_pivot.push_back(pc);
    chosen.push_back(idx);
  }
  return chosen;
}

bool solve_linear(const std::vector<RationalVector>& a, const RationalVector& b, RationalVector& x) {
  if (a.size() != b.size()) throw InvalidArgument("solve_linear: row count mismatch");
  std::size_t n = a.empty() ? 0 : a.front().size();
  LinearSystem sys;
  sys.ncols = n + 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalVector row = a[i];
    row.push_back(-b[i]);
    sys.add_row(std::move(row));
  }
  for (auto& v : nullspace(sys)) {
    if (v[n] == 1) {
      v.pop_back();
      x = std::move(v);
      return true;
    }
  }
  return false;
}

}  // namespace chistar

namespace chistar {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

std::uint64_t inverse_mod_p(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("no inverse modulo p");
  return powmod(a % p, p - 2, p);
}

std::uint64_t modular_prime(std::size_t index) {
  static std::mutex m;
  static std::vector<std::uint64_t> primes;
  std::lock_guard lock(m);
  std::uint64_t c = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    while (!is_prime_u64(c)) c -= 2;
    primes.push_back(c);
    c -= 2;
  }
  return primes[index];
}

std::vector<std::size_t> rref_mod_p(std::vector<ModVector>& m, std::size_t ncols, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    std::uint64_t inv = inverse_mod_p(m[r][col], p);
    for (std::size_t k = col; k < ncols; ++k) m[r][k] = mulmod(m[r][k], inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      std::uint64_t f = m[i][col];
      for (std::size_t k = col; k < ncols; ++k) {
        if (m[r][k] == 0) continue;
        std::uint64_t t = mulmod(f, m[r][k], p);
        m[i][k] = m[i][k] >= t ? m[i][k] - t : m[i][k] + p - t;
      }
    }
    pivots.push_back(col);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::vector<ModVector> nullspace_mod_p(const std::vector<IntegerVector>& rows, std::size_t ncols, std::uint64_t p) {
  std::vector<ModVector> m;
  m.reserve(rows.size());
  Integer t;
  for (const auto& row : rows) {
    ModVector v(ncols);
    for (std::size_t k = 0; k < ncols; ++k) v[k] = mpz_fdiv_ui(row[k].get_mpz_t(), p);
    m.push_back(std::move(v));
  }
  auto pivots = rref_mod_p(m, ncols, p);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<ModVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    ModVector v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][free] == 0 ? 0 : p - m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    q = r0 / r1;
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || t1 == 0) return false;
  if (gcd(r1, t1) != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace chistar
