#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chistar/hecke.hpp"
#include "chistar/poly.hpp"
#include "chistar/real.hpp"

namespace chistar {

/// Values of the basic (quasi)modular functions at one point.
struct ModularValues {
  ComplexHP E2, E4, E6, E2star, Delta, j, f, chi, chi_star;
  double tail_bound = 0;   // heuristic bound on the neglected q-series tail
  ComplexHP reduced_point;  // where the q-series were summed
  GL2Matrix gamma;          // gamma * tau = reduced_point
  long terms = 0;           // q-series terms summed
};

struct EvalReport {
  ComplexHP value;
  double tail_bound = 0;
  ComplexHP reduced_point;
};

// Evaluates everything at tau with `prec` result bits. With reduce = true the
// series are summed at the fundamental-domain representative and transported
// back with the exact transformation laws; otherwise they are summed at tau
// itself (slow for small Im tau). Throws DomainError for Im tau <= 0.
ModularValues eval_all(const ComplexHP& tau, long prec, bool reduce = true);

// name in {E2, E4, E6, E2star, Delta, j, f, chi, chi_star}; ParseError otherwise.
EvalReport eval_fn(std::string_view name, const ComplexHP& tau, long prec);

// Default verdict thresholds for a working precision.
double hold_tolerance(long prec);
constexpr double kFailTolerance = 1e-5;

enum class Verdict { holds, fails, indeterminate };
std::string_view verdict_name(Verdict v);

// Random element of SL2(Z) with entries bounded by `bound` in absolute value.
GL2Matrix random_sl2(std::mt19937_64& rng, long bound);

// Sample points: exact rationals in {|Re| <= 1/2, |tau| >= 1, Im <= 1.6}.
std::vector<std::pair<Rational, Rational>> sample_points(std::size_t count, std::uint64_t seed);

struct PsiIdentityReport {
  Real max_residual;
  std::size_t evaluations = 0;
};

// max |Psi(chi*(g tau), j(tau), chi*(tau))| / (largest monomial) over the
// samples, all g in D_N and `twists` random SL2(Z) multiples gamma g'.
PsiIdentityReport verify_psi_identity(const TriPolynomial& psi, long N, std::size_t samples, long prec,
                                      std::uint64_t seed = 0, std::size_t twists = 5);

struct ChiIdentityReport {
  Real max_residual, min_residual;
  Verdict verdict = Verdict::indeterminate;
  std::size_t above_fail = 0;  // samples with residual > fail tolerance
  std::size_t samples = 0;
};

// Psi(chi(g tau), j(tau), chi(tau)) for one fixed primitive g of determinant N.
ChiIdentityReport verify_chi_identity(const TriPolynomial& psi, long N, const GL2Matrix& g, std::size_t samples,
                                      long prec, std::uint64_t seed = 0);

struct LawReport {
  Real e2_law, e2star_law, chi_law;
  std::size_t samples = 0;
};

// Both sides of each law evaluated independently: the left side by direct
// q-series summation at gamma tau, the right side at tau.
LawReport verify_transformation_laws(std::size_t samples, long prec, std::uint64_t seed = 0);

struct DemoValue {
  long n;
  ComplexHP formula, direct;
  Real difference;
};

struct DemoReport {
  std::vector<DemoValue> values;
  Real max_difference;
  Real min_separation;  // smallest pairwise distance between the values
  Real f_at_i_over_N;   // |f(i/N)|, must be nonzero
};

// chi(g gamma_n i) for g = (N 0; 0 1), gamma_n = (1 -1; 1-nN nN), n = 1..n_max,
// by the closed quasimodular formula and by direct evaluation.
DemoReport infinite_values_demo(long N, long n_max, long prec);

}  // namespace chistar
