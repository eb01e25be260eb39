#include "chistar/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "chistar/errors.hpp"
#include "chistar/linsys.hpp"

namespace chistar {

int euler_phi(int d) {
  if (d < 1) throw InvalidArgument("euler_phi of non-positive integer");
  int result = d;
  int n = d;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

struct CycloTable {
  QPolynomial phi_poly;
  int degree = 0;
  // zeta^k reduced to the power basis, for 0 <= k < order.
  std::vector<std::vector<Rational>> powers;
};

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, std::shared_ptr<const CycloTable>>& table_cache() {
  static std::map<int, std::shared_ptr<const CycloTable>> cache;
  return cache;
}

QPolynomial compute_cyclotomic(int d);

std::shared_ptr<const CycloTable> table_for(int d) {
  {
    std::lock_guard lock(table_mutex());
    auto it = table_cache().find(d);
    if (it != table_cache().end()) return it->second;
  }
  auto t = std::make_shared<CycloTable>();
  t->phi_poly = compute_cyclotomic(d);
  t->degree = t->phi_poly.degree();
  auto deg = static_cast<std::size_t>(t->degree);
  std::vector<Rational> cur(deg);
  cur[0] = 1;
  const auto& pc = t->phi_poly.coeffs();
  for (int k = 0; k < d; ++k) {
    t->powers.push_back(cur);
    // multiply by x and reduce with the monic relation x^deg = -sum pc[i] x^i
    Rational top = cur[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (!is_zero(top))
      for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * pc[i];
  }
  std::lock_guard lock(table_mutex());
  return table_cache().emplace(d, std::move(t)).first->second;
}

QPolynomial compute_cyclotomic(int d) {
  // x^d - 1 divided by the cyclotomic polynomials of the proper divisors.
  QPolynomial p = QPolynomial::monomial(1, d) - QPolynomial{1};
  for (int e = 1; e < d; ++e)
    if (d % e == 0) p = divmod(p, table_for(e)->phi_poly).first;
  return p;
}

void reduce_mod(std::vector<Rational>& prod, const CycloTable& t) {
  auto deg = static_cast<std::size_t>(t.degree);
  const auto& pc = t.phi_poly.coeffs();
  for (std::size_t k = prod.size(); k-- > deg;) {
    if (is_zero(prod[k])) continue;
    Rational c = prod[k];
    for (std::size_t i = 0; i < deg; ++i)
      if (!is_zero(pc[i])) prod[k - deg + i] -= c * pc[i];
    prod[k] = 0;
  }
  prod.resize(deg);
}

}  // namespace

QPolynomial cyclotomic_polynomial(int d) {
  if (d < 1) throw InvalidArgument("cyclotomic polynomial order must be >= 1");
  return table_for(d)->phi_poly;
}

CycloElement::CycloElement() : order_(1), coeffs_(1) {}

CycloElement::CycloElement(const Rational& r) : order_(1), coeffs_{r} {}

CycloElement::CycloElement(int order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be >= 1");
  auto t = table_for(order);
  if (coeffs_.size() > static_cast<std::size_t>(t->degree)) reduce_mod(coeffs_, *t);
  coeffs_.resize(static_cast<std::size_t>(t->degree));
}

CycloElement CycloElement::zeta(int order, long power) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be >= 1");
  long k = power % order;
  if (k < 0) k += order;
  return CycloElement(order, table_for(order)->powers[static_cast<std::size_t>(k)]);
}

bool CycloElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!chistar::is_zero(c)) return false;
  return true;
}

std::optional<Rational> CycloElement::rational_value() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!chistar::is_zero(coeffs_[i])) return std::nullopt;
  return coeffs_[0];
}

CycloElement CycloElement::lift(int target) const {
  if (target == order_) return *this;
  if (target < 1 || target % order_ != 0)
    throw InvalidArgument("cannot lift order " + std::to_string(order_) + " to " + std::to_string(target));
  auto t = table_for(target);
  std::vector<Rational> out(static_cast<std::size_t>(t->degree));
  int step = target / order_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (chistar::is_zero(coeffs_[i])) continue;
    const auto& p = t->powers[(i * static_cast<std::size_t>(step)) % static_cast<std::size_t>(target)];
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!chistar::is_zero(p[k])) out[k] += coeffs_[i] * p[k];
  }
  CycloElement r;
  r.order_ = target;
  r.coeffs_ = std::move(out);
  return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  if (o.order_ != order_) {
    int m = static_cast<int>(lcm(static_cast<long>(order_), static_cast<long>(o.order_)));
    if (m != order_) *this = lift(m);
    if (o.order_ != m) return *this += o.lift(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) { return *this += -o; }

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloElement& CycloElement::operator*=(const CycloElement& o) {
  if (o.order_ != order_) {
    int m = static_cast<int>(lcm(static_cast<long>(order_), static_cast<long>(o.order_)));
    if (m != order_) *this = lift(m);
    if (o.order_ != m) return *this *= o.lift(m);
  }
  if (coeffs_.size() == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (chistar::is_zero(coeffs_[i])) continue;
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
      if (!chistar::is_zero(o.coeffs_[k])) prod[i + k] += coeffs_[i] * o.coeffs_[k];
  }
  reduce_mod(prod, *table_for(order_));
  coeffs_ = std::move(prod);
  return *this;
}

CycloElement CycloElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
  if (coeffs_.size() == 1) return CycloElement(order_, {1 / coeffs_[0]});
  auto t = table_for(order_);
  QPolynomial inv = inverse_mod(QPolynomial(coeffs_), t->phi_poly);
  return CycloElement(order_, inv.coeffs());
}

bool operator==(const CycloElement& a, const CycloElement& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  int m = static_cast<int>(lcm(static_cast<long>(a.order_), static_cast<long>(b.order_)));
  return a.lift(m).coeffs_ == b.lift(m).coeffs_;
}

std::string CycloElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (chistar::is_zero(coeffs_[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + chistar::to_string(coeffs_[i]) + ")";
    if (i > 0) out += "*z" + std::to_string(order_) + "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CycloElement cyclo_reduce(const CycloElement& e, int target_order) {
  if (target_order < 1) throw InvalidArgument("target order must be >= 1");
  if (e.order() % target_order != 0) {
    if (auto r = e.rational_value()) return CycloElement(*r).lift(target_order);
    throw InvalidArgument("target order " + std::to_string(target_order) + " does not divide " +
                          std::to_string(e.order()));
  }
  if (target_order == e.order()) return e;
  int sub = euler_phi(target_order);
  std::size_t big = e.coeffs().size();
  std::vector<RationalVector> a(big, RationalVector(static_cast<std::size_t>(sub)));
  for (int i = 0; i < sub; ++i) {
    CycloElement col = CycloElement::zeta(target_order, i).lift(e.order());
    for (std::size_t r = 0; r < big; ++r) a[r][static_cast<std::size_t>(i)] = col.coeffs()[r];
  }
  RationalVector x;
  if (!solve_linear(a, e.coeffs(), x))
    throw NotInSubfield(e.to_string() + " is not in Q(zeta_" + std::to_string(target_order) + ")");
  return CycloElement(target_order, std::move(x));
}

Rational cyclo_to_rational(const CycloElement& e) {
  if (auto r = e.rational_value()) return *r;
  return cyclo_reduce(e, 1).coeffs()[0];
}

}  // namespace chistar
