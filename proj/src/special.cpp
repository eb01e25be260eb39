#include "chistar/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <fstream>
#include <set>
#include <sstream>

#include "chistar/errors.hpp"
#include "chistar/numeval.hpp"

namespace chistar {

HPoint apply_exact(const GL2Matrix& g, const HPoint& tau) {
  if (g.det() <= 0) throw DomainError("Mobius action needs a positive determinant");
  const auto& [x, y] = tau;
  // (a tau + b)(c conj(tau) + d) / |c tau + d|^2
  Rational nr = g.a * x + g.b, ni = g.a * y;
  Rational dr = g.c * x + g.d, di = g.c * y;
  Rational den = dr * dr + di * di;
  return {(nr * dr + ni * di) / den, (ni * dr - nr * di) / den};
}

std::vector<std::vector<long>> SpecialDescriptor::blocks() const {
  std::map<long, std::vector<long>> by_base;
  for (long s = 1; s <= n; ++s) {
    if (constants.count(s)) continue;
    auto it = relations.find(s);
    if (it == relations.end()) by_base[s].insert(by_base[s].begin(), s);
    else by_base[it->second.first].push_back(s);
  }
  std::vector<std::vector<long>> out;
  for (auto& [base, members] : by_base) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

void SpecialDescriptor::validate() const {
  if (n < 1) throw InvalidArgument("descriptor needs n >= 1");
  auto in_range = [&](long s) { return s >= 1 && s <= n; };
  for (const auto& [s, pt] : constants) {
    if (!in_range(s)) throw InvalidArgument("constant index " + std::to_string(s) + " out of range");
    if (sgn(pt.second) <= 0) throw InvalidArgument("constant " + std::to_string(s) + " is not in the upper half-plane");
  }
  for (const auto& [s, rel] : relations) {
    const auto& [base, g] = rel;
    if (!in_range(s) || !in_range(base)) throw InvalidArgument("relation index out of range");
    if (base >= s) throw InvalidArgument("a block is named by its least element");
    if (constants.count(s) || constants.count(base)) throw InvalidArgument("coordinate in both S_0 and a block");
    if (relations.count(base)) throw InvalidArgument("relation base " + std::to_string(base) + " is itself related");
    if (g.det() <= 0) throw InvalidArgument("relation matrix needs a positive determinant");
    if (!g.is_primitive()) throw InvalidArgument("relation matrix must be primitive");
  }
}

SpecialDescriptor parse_descriptor(const std::string& text) {
  SpecialDescriptor d;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  bool have_n = false;
  auto fail = [&](const std::string& why) { throw ParseError("line " + std::to_string(lineno) + ": " + why); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    auto as_long = [&](const std::string& s) {
      try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) fail("bad integer '" + s + "'");
        return v;
      } catch (const std::logic_error&) {
        fail("bad integer '" + s + "'");
      }
      return 0L;
    };
    if (kw == "n") {
      if (args.size() != 1) fail("expected 'n <dim>'");
      d.n = as_long(args[0]);
      have_n = true;
    } else if (kw == "const") {
      if (args.size() != 3) fail("expected 'const <index> <re> <im>'");
      long s = as_long(args[0]);
      try {
        d.constants[s] = {parse_rational(args[1]), parse_rational(args[2])};
      } catch (const ParseError& e) {
        fail(e.what());
      }
    } else if (kw == "rel") {
      if (args.size() != 6) fail("expected 'rel <block> <index> a b c d'");
      long base = as_long(args[0]), s = as_long(args[1]);
      GL2Matrix g{as_long(args[2]), as_long(args[3]), as_long(args[4]), as_long(args[5])};
      if (g.det() <= 0) fail("relation matrix needs a positive determinant");
      g = GL2Matrix::primitive_from(Rational(g.a), Rational(g.b), Rational(g.c), Rational(g.d));
      if (d.relations.count(s)) fail("coordinate " + std::to_string(s) + " related twice");
      d.relations[s] = {base, g};
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!have_n) throw ParseError("line " + std::to_string(lineno) + ": missing 'n <dim>'");
  d.validate();
  return d;
}

SpecialDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_descriptor(ss.str());
}

std::string format_descriptor(const SpecialDescriptor& d) {
  std::ostringstream out;
  out << "n " << d.n << "\n";
  for (const auto& [s, pt] : d.constants) out << "const " << s << " " << to_string(pt.first) << " " << to_string(pt.second) << "\n";
  for (const auto& [s, rel] : d.relations) {
    const auto& g = rel.second;
    out << "rel " << rel.first << " " << s << " " << g.a << " " << g.b << " " << g.c << " " << g.d << "\n";
  }
  return out.str();
}

bool is_gut(const SpecialDescriptor& d) {
  return std::all_of(d.relations.begin(), d.relations.end(), [](const auto& r) { return r.second.second.c == 0; });
}

std::vector<std::vector<HPoint>> sample_points(const SpecialDescriptor& d, std::size_t count, std::uint64_t seed) {
  d.validate();
  auto blocks = d.blocks();
  auto free = sample_points(count * std::max<std::size_t>(blocks.size(), 1), seed);
  std::vector<std::vector<HPoint>> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<HPoint> pt(static_cast<std::size_t>(d.n));
    for (const auto& [s, c] : d.constants) pt[static_cast<std::size_t>(s - 1)] = c;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      long base = blocks[b].front();
      const HPoint& t = free[k * blocks.size() + b];
      pt[static_cast<std::size_t>(base - 1)] = t;
      for (std::size_t m = 1; m < blocks[b].size(); ++m) {
        long s = blocks[b][m];
        pt[static_cast<std::size_t>(s - 1)] = apply_exact(d.relations.at(s).second, t);
      }
    }
    out.push_back(std::move(pt));
  }
  return out;
}

Real VnResiduals::max() const { return chistar::max(phi, chistar::max(psi_a, psi_b)); }

VnResiduals vn_membership(const BiPolynomial& phi, const TriPolynomial& psi, const ComplexHP& tau, const GL2Matrix& g,
                          long prec) {
  if (g.det() <= 0) throw InvalidArgument("g needs a positive determinant");
  ModularValues v = eval_all(tau, prec);
  ModularValues gv = eval_all(g.apply(tau), prec);
  const ComplexHP &W = v.j, &X = v.chi_star, &Y = gv.j, &Z = gv.chi_star;
  return {phi.residual({W, Y}), psi.residual({X, Y, Z}), psi.residual({Z, W, X})};
}

VnReport vn_check(const BiPolynomial& phi, const TriPolynomial& psi, long N, std::size_t samples, long prec,
                  std::uint64_t seed, int twists) {
  VnReport rep{{Real(0.0, prec), Real(0.0, prec), Real(0.0, prec)}, 0};
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  auto dn = enumerate_DN(N);
  std::uniform_int_distribution<std::size_t> pick(0, dn.size() - 1);
  for (const auto& [x, y] : sample_points(samples, seed)) {
    ComplexHP tau(x, y, prec);
    std::vector<GL2Matrix> gs = dn;
    for (int t = 0; t < twists; ++t) gs.push_back(random_sl2(rng, 5) * dn[pick(rng)]);
    for (const auto& g : gs) {
      VnResiduals r = vn_membership(phi, psi, tau, g, prec);
      rep.worst.phi = max(rep.worst.phi, r.phi);
      rep.worst.psi_a = max(rep.worst.psi_a, r.psi_a);
      rep.worst.psi_b = max(rep.worst.psi_b, r.psi_b);
      ++rep.evaluations;
    }
  }
  return rep;
}

Real chi_relation_residual(const TriPolynomial& psi, const ComplexHP& tau, const GL2Matrix& g, long prec) {
  ModularValues v = eval_all(tau, prec);
  ModularValues gv = eval_all(g.apply(tau), prec);
  return psi.residual({gv.chi, v.j, v.chi});
}

RankProbe plane_rank_probe(long N, std::size_t count, long prec, std::uint64_t seed) {
  if (count < 8) throw InvalidArgument("plane_rank_probe needs at least 8 samples");
  GL2Matrix g{1, 0, 0, N};
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(count), 4);
  auto pts = sample_points(count, seed);
  for (std::size_t k = 0; k < count; ++k) {
    ComplexHP tau(pts[k].first, pts[k].second, prec);
    ModularValues v = eval_all(tau, prec), gv = eval_all(g.apply(tau), prec);
    const ComplexHP* cols[4] = {&v.j, &v.chi_star, &gv.j, &gv.chi_star};
    for (int c = 0; c < 4; ++c)
      m(static_cast<Eigen::Index>(k), c) = {cols[c]->re().to_double(), cols[c]->im().to_double()};
  }
  RankProbe rep;
  for (int c = 0; c < 4; ++c) {
    std::vector<std::complex<double>> seen;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      auto z = m(k, c);
      bool dup = std::any_of(seen.begin(), seen.end(),
                             [&](auto w) { return std::abs(z - w) <= 1e-3 * std::max(1.0, std::abs(w)); });
      if (!dup) seen.push_back(z);
    }
    rep.distinct.push_back(seen.size());
  }
  // affine span: centre, then scale columns so units do not matter
  Eigen::RowVectorXcd mean = m.colwise().mean();
  m.rowwise() -= mean;
  for (int c = 0; c < 4; ++c) {
    double s = m.col(c).cwiseAbs().maxCoeff();
    if (s > 0) m.col(c) /= s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  auto sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    rep.singular_values.push_back(sv(k));
    if (sv(k) > 1e-9 * sv(0)) ++rep.rank;
  }
  return rep;
}

std::vector<PushforwardPoint> pushforward(const SpecialDescriptor& d, std::size_t count, long prec, bool chi_only,
                                          std::uint64_t seed) {
  std::vector<PushforwardPoint> out;
  for (auto& src : sample_points(d, count, seed)) {
    PushforwardPoint p;
    for (const auto& t : src) {
      ModularValues v = eval_all(ComplexHP(t.first, t.second, prec), prec);
      if (!chi_only) p.image.push_back(v.j);
      p.image.push_back(v.chi_star);
    }
    p.source = std::move(src);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ComplexHP> polynomial_roots(const std::vector<ComplexHP>& coeffs, long prec) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1].is_zero()) --n;
  if (n <= 1) return {};
  long wp = prec + 32;
  std::vector<ComplexHP> c;
  for (std::size_t k = 0; k < n; ++k) c.push_back(coeffs[k].with_precision(wp));
  std::size_t deg = n - 1;
  // Cauchy bound for the starting circle
  Real lead = c[deg].abs(), radius(1.0, wp);
  for (std::size_t k = 0; k < deg; ++k) radius = max(radius, Real(1.0, wp) + c[k].abs() / lead);
  std::vector<ComplexHP> z;
  Real two_pi = Real::pi(wp) * 2;
  for (std::size_t k = 0; k < deg; ++k) {
    Real ang = two_pi * Real(Rational(static_cast<long>(k)), wp) / Real(Rational(static_cast<long>(deg)), wp) +
               Real(0.4, wp);
    z.emplace_back(radius * cos(ang), radius * sin(ang));
  }
  auto eval = [&](const ComplexHP& x, ComplexHP& p, ComplexHP& dp) {
    p = c[deg];
    dp = ComplexHP(0.0, 0.0, wp);
    for (std::size_t k = deg; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
  };
  Real target = pow2(-(prec - 8), wp), loose = pow2(-prec / 4, wp);
  ComplexHP p(wp), dp(wp);
  Real step(wp);
  for (int it = 0; it < 4000; ++it) {
    step = Real(0.0, wp);
    for (std::size_t k = 0; k < deg; ++k) {
      eval(z[k], p, dp);
      if (p.is_zero()) continue;
      ComplexHP ratio = p / dp;
      ComplexHP s(0.0, 0.0, wp);
      for (std::size_t m = 0; m < deg; ++m)
        if (m != k) s += ComplexHP(1.0, 0.0, wp) / (z[k] - z[m]);
      ComplexHP w = ratio / (ComplexHP(1.0, 0.0, wp) - ratio * s);
      z[k] -= w;
      step = max(step, w.abs() / max(Real(1.0, wp), z[k].abs()));
    }
    if (step < target) break;
  }
  // multiple roots only converge linearly; a quarter of the bits is enough here
  if (!(step < loose)) throw PrecisionLoss("root iteration did not converge");
  for (auto& r : z) r = r.with_precision(prec);
  return z;
}

namespace {

std::vector<ComplexHP> specialize_y(const TriPolynomial& psi, const ComplexHP& x, const ComplexHP& z, long prec) {
  std::vector<ComplexHP> out(static_cast<std::size_t>(psi.degree(1) + 1), ComplexHP(0.0, 0.0, prec));
  for (const auto& [e, c] : psi.terms())
    out[static_cast<std::size_t>(e[1])] += x.pow(e[0]) * z.pow(e[2]) * Real(c, prec);
  return out;
}

}  // namespace

Real chi_pair_resultant(const BiPolynomial& phi, const TriPolynomial& psi, const ComplexHP& z1, const ComplexHP& z2,
                        long prec) {
  auto j1s = polynomial_roots(specialize_y(psi, z2, z1, prec), prec);
  auto j2s = polynomial_roots(specialize_y(psi, z1, z2, prec), prec);
  Real best(prec);
  bool first = true;
  for (const auto& a : j1s)
    for (const auto& b : j2s) {
      auto [v, mono] = phi.evaluate(std::array<ComplexHP, 2>{a, b});
      Real r = v.abs() / max(Real(1.0, prec), mono);
      if (first || r < best) best = r;
      first = false;
    }
  if (first) throw DomainError("Psi_N is constant in j at this point");
  return best;
}

}  // namespace chistar
