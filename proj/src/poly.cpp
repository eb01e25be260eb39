#include "chistar/poly.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "chistar/errors.hpp"

namespace chistar {

template <std::size_t NV>
std::pair<ComplexHP, Real> SparsePoly<NV>::evaluate(const std::array<ComplexHP, NV>& x) const {
  long prec = 64;
  for (const auto& v : x) prec = std::max(prec, v.precision());
  std::array<std::vector<ComplexHP>, NV> powers;
  for (std::size_t k = 0; k < NV; ++k) {
    int d = std::max(degree(k), 0);
    powers[k].reserve(static_cast<std::size_t>(d) + 1);
    powers[k].emplace_back(Rational(1), Rational(0), prec);
    for (int p = 1; p <= d; ++p) powers[k].push_back(powers[k].back() * x[k]);
  }
  ComplexHP sum(prec);
  Real biggest(prec);
  for (const auto& [e, c] : terms_) {
    ComplexHP t = powers[0][static_cast<std::size_t>(e[0])];
    for (std::size_t k = 1; k < NV; ++k) t *= powers[k][static_cast<std::size_t>(e[k])];
    t *= Real(c, prec);
    Real m = t.abs();
    if (biggest < m) biggest = m;
    sum += t;
  }
  return {sum, biggest};
}

template <std::size_t NV>
std::string SparsePoly<NV>::to_string() const {
  static const char names[] = {'X', 'Y', 'Z'};
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    std::string cs = chistar::to_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    bool constant = true;
    for (std::size_t k = 0; k < NV; ++k) constant = constant && e[k] == 0;
    if (cs != "1" || constant) s += cs;
    for (std::size_t k = 0; k < NV; ++k) {
      if (e[k] == 0) continue;
      s += names[k];
      if (e[k] > 1) s += "^" + std::to_string(e[k]);
    }
  }
  return s;
}

template class SparsePoly<2>;
template class SparsePoly<3>;

namespace {

template <std::size_t NV>
std::string format_impl(const SparsePoly<NV>& p, long N, const char* tag) {
  std::ostringstream os;
  os << tag << " N=" << N << "\n";
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < NV; ++k) os << (k ? " " : "") << e[k];
    os << " : " << to_string(c) << "\n";
  }
  return os.str();
}

template <std::size_t NV>
SparsePoly<NV> parse_impl(const std::string& text, long* N, const std::string& tag) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("line " + std::to_string(lineno) + ": " + why);
  };
  SparsePoly<NV> p;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      std::istringstream hs(line);
      std::string t, n;
      hs >> t >> n;
      if (t != tag || n.rfind("N=", 0) != 0) fail("expected header '" + tag + " N=<N>'");
      try {
        long v = std::stol(n.substr(2));
        if (N) *N = v;
      } catch (const std::exception&) {
        fail("bad N in header");
      }
      header = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("missing ':'");
    std::istringstream es(line.substr(0, colon));
    typename SparsePoly<NV>::Exps e{};
    std::size_t count = 0;
    std::string tok;
    while (es >> tok) {
      if (count == NV) fail("too many exponents");
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) fail("bad exponent '" + tok + "'");
        e[count++] = v;
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        fail("bad exponent '" + tok + "'");
      }
    }
    if (count != NV) fail("expected " + std::to_string(NV) + " exponents");
    std::string cs = line.substr(colon + 1);
    Rational c;
    try {
      c = parse_rational(cs);
    } catch (const Error& err) {
      fail(std::string("bad coefficient: ") + err.what());
    }
    if (sgn(c) == 0) fail("zero coefficient");
    if (sgn(p.coeff(e)) != 0) fail("duplicate monomial");
    p.add_term(e, c);
  }
  if (!header) throw ParseError("line 1: missing header");
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << body;
}

}  // namespace

std::string format_poly(const BiPolynomial& p, long N) { return format_impl(p, N, "bipoly"); }
std::string format_poly(const TriPolynomial& p, long N) { return format_impl(p, N, "tripoly"); }
void save_poly(const BiPolynomial& p, long N, const std::string& path) { write_file(path, format_poly(p, N)); }
void save_poly(const TriPolynomial& p, long N, const std::string& path) { write_file(path, format_poly(p, N)); }
BiPolynomial parse_bipoly(const std::string& text, long* N) { return parse_impl<2>(text, N, "bipoly"); }
TriPolynomial parse_tripoly(const std::string& text, long* N) { return parse_impl<3>(text, N, "tripoly"); }
BiPolynomial load_bipoly(const std::string& path, long* N) { return parse_bipoly(read_file(path), N); }
TriPolynomial load_tripoly(const std::string& path, long* N) { return parse_tripoly(read_file(path), N); }

}  // namespace chistar
