// chistar: build and certify the modular polynomials Phi_N, Psi_N and evaluate
// j, chi, chi* numerically. Every command prints "key = value" lines ending in
// "status = PASS|FAIL" and writes the same report to the output directory.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chistar/cm.hpp"
#include "chistar/errors.hpp"
#include "chistar/hecke.hpp"
#include "chistar/modpoly.hpp"
#include "chistar/numeval.hpp"
#include "chistar/special.hpp"

using namespace chistar;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  long prec = 256;
  long trunc = 0;  // 0: the module default (40 N for Psi_N)
  std::uint64_t seed = 0;
  long samples = 0;  // 0: the command default
  double tol = 0;    // 0: the command default
  std::string out = ".";
};

class Report {
 public:
  explicit Report(std::string name) : name_(std::move(name)) {}
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    lines_.emplace_back(key, s.str());
  }
  void add(const std::string& key, bool value) { lines_.emplace_back(key, value ? "true" : "false"); }
  void check(const std::string& key, bool ok) {
    lines_.emplace_back(key, ok ? "PASS" : "FAIL");
    pass_ = pass_ && ok;
  }
  int finish(const RunConfig& cfg) const {
    std::ostringstream s;
    for (const auto& [k, v] : lines_) s << k << " = " << v << "\n";
    s << "status = " << (pass_ ? "PASS" : "FAIL") << "\n";
    std::cout << s.str();
    fs::create_directories(cfg.out);
    std::ofstream(fs::path(cfg.out) / (name_ + ".report")) << s.str();
    return pass_ ? 0 : 1;
  }

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> lines_;
  bool pass_ = true;
};

int digits_for(long prec) { return static_cast<int>(std::max(20.0, prec * 0.30103 - 10)); }

std::string sci(const Real& x) { return x.to_string(6); }

std::string phi_path(const RunConfig& cfg, long N) { return (fs::path(cfg.out) / ("phi_" + std::to_string(N) + ".txt")).string(); }
std::string psi_path(const RunConfig& cfg, long N) { return (fs::path(cfg.out) / ("psi_" + std::to_string(N) + ".txt")).string(); }

RecoveryConfig recovery(const RunConfig& cfg) {
  RecoveryConfig r;
  r.T = cfg.trunc;
  return r;
}

// Loads the polynomial files, building and saving any that are missing.
BiPolynomial need_phi(const RunConfig& cfg, long N) {
  std::string path = phi_path(cfg, N);
  if (fs::exists(path)) return load_bipoly(path);
  std::cerr << "building " << path << "\n";
  fs::create_directories(cfg.out);
  BiPolynomial p = build_phi(N);
  save_poly(p, N, path);
  return p;
}

TriPolynomial need_psi(const RunConfig& cfg, long N) {
  std::string path = psi_path(cfg, N);
  if (fs::exists(path)) return load_tripoly(path);
  std::cerr << "building " << path << "\n";
  fs::create_directories(cfg.out);
  TriPolynomial p = build_psi(N, recovery(cfg));
  save_poly(p, N, path);
  return p;
}

ComplexHP parse_tau(const std::string& s, long prec) {
  auto [x, y] = ComplexHP::parse_exact(s);
  if (sgn(y) <= 0) throw DomainError("tau must lie in the upper half-plane");
  return ComplexHP(x, y, prec);
}

GL2Matrix parse_matrix(const std::string& s) {
  std::istringstream in(s);
  long a, b, c, d;
  if (!(in >> a >> b >> c >> d)) throw ParseError("matrix must be four integers 'a b c d'");
  return {a, b, c, d};
}

int cmd_dn(const RunConfig& cfg, long N) {
  if (N < 1) throw InvalidArgument("N must be positive");
  Report r("dn_" + std::to_string(N));
  auto dn = enumerate_DN(N);
  r.add("N", N);
  r.add("count", dn.size());
  for (const auto& g : dn) r.add("g", g.to_string());
  return r.finish(cfg);
}

int cmd_phi(const RunConfig& cfg, long N) {
  if (N < 1) throw InvalidArgument("N must be positive");
  Report r("phi_" + std::to_string(N));
  BiPolynomial p = build_phi(N);
  std::string path = phi_path(cfg, N);
  fs::create_directories(cfg.out);
  save_poly(p, N, path);
  BiPolynomial swapped;
  for (const auto& [e, c] : p.terms()) swapped.add_term({e[1], e[0]}, c);
  r.add("N", N);
  r.add("terms", p.size());
  r.add("deg_x", p.degree(0));
  r.add("file", path);
  r.check("integer_coefficients", p.has_integer_coefficients());
  r.check("degree_matches_dn", static_cast<std::size_t>(p.degree(0)) == enumerate_DN(N).size());
  if (N > 1) r.check("symmetric", p == swapped);
  return r.finish(cfg);
}

int cmd_psi(const RunConfig& cfg, long N) {
  if (N < 1) throw InvalidArgument("N must be positive");
  Report r("psi_" + std::to_string(N));
  RecoveryStats st;
  TriPolynomial p = build_psi(N, recovery(cfg), &st);
  std::string path = psi_path(cfg, N);
  fs::create_directories(cfg.out);
  save_poly(p, N, path);
  PsiSanity s = psi_sanity(p, N);
  r.add("N", N);
  r.add("B", st.B);
  r.add("T", st.T);
  r.add("terms", p.size());
  r.add("deg_x", s.deg_x);
  r.add("deg_y", s.deg_y);
  r.add("deg_z", s.deg_z);
  r.add("file", path);
  r.check("deg_x_matches_dn", s.deg_x_matches);
  if (N > 1) r.check("y_dependent", s.y_dependent);
  r.check("content_one", s.content_one);
  r.check("squarefree_x", s.squarefree_x);
  return r.finish(cfg);
}

int cmd_eval(const RunConfig& cfg, const std::string& fn, const std::string& tau_s) {
  ComplexHP tau = parse_tau(tau_s, cfg.prec);
  EvalReport e = eval_fn(fn, tau, cfg.prec);
  Report r("eval_" + fn);
  r.add("fn", fn);
  r.add("tau", tau_s);
  r.add("prec", cfg.prec);
  r.add("value", e.value.to_string(digits_for(cfg.prec)));
  r.add("tail_bound", e.tail_bound);
  r.add("reduced_point", e.reduced_point.to_string(20));
  return r.finish(cfg);
}

int cmd_verify_psi(const RunConfig& cfg, long N) {
  TriPolynomial psi = need_psi(cfg, N);
  std::size_t samples = cfg.samples > 0 ? static_cast<std::size_t>(cfg.samples) : 10;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-20;
  PsiIdentityReport rep = verify_psi_identity(psi, N, samples, cfg.prec, cfg.seed, 5);
  Report r("verify_psi_" + std::to_string(N));
  r.add("N", N);
  r.add("prec", cfg.prec);
  r.add("seed", cfg.seed);
  r.add("samples", samples);
  r.add("evaluations", rep.evaluations);
  r.add("max_residual", sci(rep.max_residual));
  r.add("tolerance", tol);
  r.check("identity", rep.max_residual.to_double() < tol);
  return r.finish(cfg);
}

int cmd_verify_chi(const RunConfig& cfg, long N, const std::string& gspec) {
  TriPolynomial psi = need_psi(cfg, N);
  std::size_t samples = cfg.samples > 0 ? static_cast<std::size_t>(cfg.samples) : 10;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-20;
  Report r("verify_chi_" + std::to_string(N));
  r.add("N", N);
  r.add("prec", cfg.prec);
  r.add("seed", cfg.seed);
  r.add("samples", samples);
  std::vector<GL2Matrix> gs;
  if (gspec.empty()) {
    gs = enumerate_DN(N);
    gs.push_back({1, 0, 1, N});
  } else {
    gs.push_back(parse_matrix(gspec));
  }
  for (const auto& g : gs) {
    if (g.det() != N || !g.is_primitive()) throw InvalidArgument("g must be primitive of determinant N");
    ChiIdentityReport c = verify_chi_identity(psi, N, g, samples, cfg.prec, cfg.seed);
    std::string key = "g[" + g.to_string() + "]";
    r.add(key + ".max_residual", sci(c.max_residual));
    r.add(key + ".min_residual", sci(c.min_residual));
    r.add(key + ".above_fail", c.above_fail);
    if (g.is_upper_triangular()) {
      r.check(key + ".holds", c.max_residual.to_double() < tol);
    } else {
      // the relation must fail for matrices that are not upper triangular
      r.check(key + ".fails", c.above_fail * 10 >= 9 * c.samples);
    }
  }
  return r.finish(cfg);
}

int cmd_verify_laws(const RunConfig& cfg) {
  std::size_t samples = cfg.samples > 0 ? static_cast<std::size_t>(cfg.samples) : 20;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-30;
  LawReport l = verify_transformation_laws(samples, cfg.prec, cfg.seed);
  Report r("verify_laws");
  r.add("prec", cfg.prec);
  r.add("seed", cfg.seed);
  r.add("samples", l.samples);
  r.add("e2_law", sci(l.e2_law));
  r.add("e2star_law", sci(l.e2star_law));
  r.add("chi_law", sci(l.chi_law));
  r.add("tolerance", tol);
  r.check("e2", l.e2_law.to_double() < tol);
  r.check("e2star", l.e2star_law.to_double() < tol);
  r.check("chi", l.chi_law.to_double() < tol);
  return r.finish(cfg);
}

int cmd_verify_demo(const RunConfig& cfg, long N) {
  double tol = cfg.tol > 0 ? cfg.tol : 1e-25;
  long n_max = cfg.samples > 0 ? cfg.samples : 10;
  DemoReport d = infinite_values_demo(N, n_max, cfg.prec);
  Report r("verify_demo_" + std::to_string(N));
  r.add("N", N);
  r.add("prec", cfg.prec);
  for (const auto& v : d.values) r.add("chi[" + std::to_string(v.n) + "]", v.direct.to_string(25));
  r.add("max_difference", sci(d.max_difference));
  r.add("min_separation", sci(d.min_separation));
  r.add("abs_f_at_i_over_N", sci(d.f_at_i_over_N));
  r.check("formula_matches_direct", d.max_difference.to_double() < tol);
  r.check("pairwise_distinct", d.min_separation.to_double() > 1e-3);
  return r.finish(cfg);
}

std::string form_name(const QuadraticPoint& f) {
  return "(" + std::to_string(f.A) + "," + std::to_string(f.B) + "," + std::to_string(f.C) + ")";
}

int cmd_cm(const RunConfig& cfg, long D) {
  OrbitReport o = galois_orbit_check(D, cfg.prec);
  Report r("cm_" + std::to_string(-D));
  int dg = std::min(40, digits_for(cfg.prec));
  r.add("D", D);
  r.add("prec", cfg.prec);
  r.add("class_number", o.points.size());
  for (std::size_t k = 0; k < o.points.size(); ++k) {
    const auto& p = o.points[k];
    std::string key = "point[" + std::to_string(k + 1) + "]";
    r.add(key + ".form", form_name(p.form));
    r.add(key + ".tau", p.tau.to_string(25));
    r.add(key + ".j", p.j.to_string(dg));
    r.add(key + ".chi_star", p.chi_star.to_string(dg));
    if (p.level.certified) {
      r.add(key + ".level", p.level.d);
      r.add(key + ".level_residual", sci(p.level.residual));
      r.check(key + ".level_certified", p.level.residual.to_double() < 1e-10);
    } else {
      r.add(key + ".level", "none (" + p.level_error + ")");
    }
    if (p.masser) {
      r.add(key + ".masser_psi", p.masser->to_string(dg));
      r.add(key + ".direct_psi", p.direct.to_string(dg));
      r.add(key + ".masser_difference", sci(*p.masser_diff));
      r.check(key + ".masser_agrees", p.masser_diff->to_double() < 1e-12);
    } else {
      r.add(key + ".masser", "not applicable (" + p.masser_error + ")");
    }
  }
  for (std::size_t k = 0; k < o.j_symmetric.size(); ++k)
    r.add("j_elementary[" + std::to_string(k + 1) + "]", o.j_symmetric[k].re().round());
  r.add("j_integrality", sci(o.j_integrality));
  r.check("j_symmetric_integral", o.j_integrality.to_double() < 1e-10);
  for (std::size_t k = 0; k < o.chi_rational.size(); ++k) {
    std::string key = "chi_star_elementary[" + std::to_string(k + 1) + "]";
    // reconstruction failures are data, not a failed check
    r.add(key, o.chi_rational[k] ? to_string(*o.chi_rational[k]) : "ReconstructionFailed");
  }
  r.add("chi_star_elementary_imag", sci(o.chi_imag));
  BridgeReport b = certify_chi_star_bridge(20, cfg.prec, cfg.seed);
  r.add("bridge_samples", b.samples);
  r.add("bridge_max_residual", sci(b.max_residual));
  r.check("bridge_series_identity", b.series_identity);
  r.check("bridge_numeric", b.max_residual.to_double() < 1e-25);
  return r.finish(cfg);
}

int cmd_special_vn(const RunConfig& cfg, long N) {
  BiPolynomial phi = need_phi(cfg, N);
  TriPolynomial psi = need_psi(cfg, N);
  std::size_t samples = cfg.samples > 0 ? static_cast<std::size_t>(cfg.samples) : 10;
  double tol = cfg.tol > 0 ? cfg.tol : 1e-20;
  VnReport v = vn_check(phi, psi, N, samples, cfg.prec, cfg.seed, 5);
  RankProbe rp = plane_rank_probe(N, std::max<std::size_t>(samples, 8), cfg.prec, cfg.seed);
  Report r("special_vn_" + std::to_string(N));
  r.add("N", N);
  r.add("prec", cfg.prec);
  r.add("seed", cfg.seed);
  r.add("samples", samples);
  r.add("evaluations", v.evaluations);
  r.add("phi_residual", sci(v.worst.phi));
  r.add("psi_residual_a", sci(v.worst.psi_a));
  r.add("psi_residual_b", sci(v.worst.psi_b));
  r.add("rank", rp.rank);
  std::ostringstream sv;
  for (double s : rp.singular_values) sv << (sv.tellp() ? " " : "") << s;
  r.add("singular_values", sv.str());
  r.check("membership", v.worst.max().to_double() < tol);
  return r.finish(cfg);
}

int cmd_special_push(const RunConfig& cfg, const std::string& desc_path, bool chi_only) {
  SpecialDescriptor d = load_descriptor(desc_path);
  std::size_t samples = cfg.samples > 0 ? static_cast<std::size_t>(cfg.samples) : 5;
  auto pts = pushforward(d, samples, cfg.prec, chi_only, cfg.seed);
  Report r("special_push_" + fs::path(desc_path).stem().string());
  r.add("n", d.n);
  r.add("gut", is_gut(d));
  r.add("chi_only", chi_only);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::string key = "point[" + std::to_string(k + 1) + "]";
    std::ostringstream src;
    for (const auto& t : pts[k].source) src << (src.tellp() ? "; " : "") << to_string(t.first) << " + " << to_string(t.second) << "i";
    r.add(key + ".source", src.str());
    for (std::size_t c = 0; c < pts[k].image.size(); ++c) r.add(key + ".image[" + std::to_string(c + 1) + "]", pts[k].image[c].to_string(25));
  }
  // for a single relation tau_2 = g tau_1 also evaluate the eliminant in the chi* pair
  if (d.n == 2 && d.relations.size() == 1 && chi_only) {
    long N = d.relations.begin()->second.second.det();
    BiPolynomial phi = need_phi(cfg, N);
    TriPolynomial psi = need_psi(cfg, N);
    Real worst(0.0, cfg.prec);
    for (const auto& p : pts) worst = max(worst, chi_pair_resultant(phi, psi, p.image[0], p.image[1], cfg.prec));
    r.add("resultant_residual", sci(worst));
    r.check("resultant", worst.to_double() < (cfg.tol > 0 ? cfg.tol : 1e-20));
  }
  return r.finish(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chistar: modular polynomials for j and chi*, with numerical certification"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--prec", cfg.prec, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
  app.add_option("--trunc", cfg.trunc, "q-truncation for Psi_N (default 40 N)")->check(CLI::Range(8L, 1L << 20));
  app.add_option("--seed", cfg.seed, "seed for sample points");
  app.add_option("--samples", cfg.samples, "number of sample points")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "override the pass tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output directory for polynomial files and reports");

  std::function<int()> run;
  long N = 0, D = 0;
  std::string fn, tau, gspec, desc;
  bool chi_only = false;

  auto* dn = app.add_subcommand("dn", "list D_N");
  dn->add_option("N", N)->required();
  dn->callback([&] { run = [&] { return cmd_dn(cfg, N); }; });

  auto* phi = app.add_subcommand("phi", "build Phi_N and write phi_N.txt");
  phi->add_option("N", N)->required();
  phi->callback([&] { run = [&] { return cmd_phi(cfg, N); }; });

  auto* psi = app.add_subcommand("psi", "build Psi_N and write psi_N.txt");
  psi->add_option("N", N)->required();
  psi->callback([&] { run = [&] { return cmd_psi(cfg, N); }; });

  auto* ev = app.add_subcommand("eval", "evaluate a function at tau");
  ev->add_option("--fn", fn, "E2, E4, E6, E2star, Delta, j, f, chi or chi_star")->required();
  ev->add_option("--tau", tau, "point a+bi with exact rational a, b")->required();
  ev->callback([&] { run = [&] { return cmd_eval(cfg, fn, tau); }; });

  auto* ver = app.add_subcommand("verify", "numerical certification suites");
  ver->require_subcommand(1);
  auto* vpsi = ver->add_subcommand("psi", "Psi_N(chi*(g tau), j(tau), chi*(tau)) = 0");
  vpsi->add_option("--n", N)->required();
  vpsi->callback([&] { run = [&] { return cmd_verify_psi(cfg, N); }; });
  auto* vchi = ver->add_subcommand("chi", "the same relation with chi: holds iff g is upper triangular");
  vchi->add_option("--n", N)->required();
  vchi->add_option("--g", gspec, "single matrix 'a b c d' (default: D_N and (1 0; 1 N))");
  vchi->callback([&] { run = [&] { return cmd_verify_chi(cfg, N, gspec); }; });
  auto* vlaws = ver->add_subcommand("laws", "E2, E2* and chi transformation laws");
  vlaws->callback([&] { run = [&] { return cmd_verify_laws(cfg); }; });
  auto* vdemo = ver->add_subcommand("demo", "infinitely many values of chi at translates of i");
  vdemo->add_option("--n", N)->default_val(2);
  vdemo->callback([&] { run = [&] { return cmd_verify_demo(cfg, N); }; });

  auto* cm = app.add_subcommand("cm", "CM values, Masser's formula and Galois orbits");
  cm->add_option("--disc", D, "negative discriminant")->required();
  cm->callback([&] { run = [&] { return cmd_cm(cfg, D); }; });

  auto* sp = app.add_subcommand("special", "special varieties");
  sp->require_subcommand(1);
  auto* svn = sp->add_subcommand("vn", "membership in V_N'");
  svn->add_option("--n", N)->required();
  svn->callback([&] { run = [&] { return cmd_special_vn(cfg, N); }; });
  auto* spush = sp->add_subcommand("push", "push a descriptor forward to (j, chi*)");
  spush->add_option("--desc", desc, "descriptor file")->required()->check(CLI::ExistingFile);
  spush->add_flag("--chi-only", chi_only, "keep only the chi* coordinates");
  spush->callback([&] { run = [&] { return cmd_special_push(cfg, desc, chi_only); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const Error& e) {
    std::cout << "error = " << e.kind() << "\n" << "status = FAIL\n";
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << "error = " << e.what() << "\nstatus = FAIL\n";
    return 1;
  }
}
