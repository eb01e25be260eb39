#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chistar/hecke.hpp"
#include "chistar/real.hpp"

namespace chistar {

/// Reduced primitive binary quadratic form A x^2 + B xy + C y^2 with D < 0
/// and its CM point tau = (-B + i sqrt|D|)/(2A).
struct QuadraticPoint {
  long A = 1, B = 0, C = 1;
  long D() const { return B * B - 4 * A * C; }
  ComplexHP tau(long prec) const;
  friend bool operator==(const QuadraticPoint&, const QuadraticPoint&) = default;
};

// All reduced primitive forms of discriminant D (length h(D)). Throws
// InvalidDiscriminant unless D < 0 and D = 0, 1 mod 4.
std::vector<QuadraticPoint> reduced_forms(long D);

// Primitive part of (-B -2C; 2A B), which fixes tau.
GL2Matrix fixing_matrix(const QuadraticPoint& p);

struct LevelChoice {
  GL2Matrix matrix;  // fixing matrix whose determinant is the level
  long d = 0;
  Real residual;     // normalized |Phi_d(j(tau), j(tau))|
  bool certified = false;
  std::vector<std::pair<long, Real>> tried;
};

// Level for the Taylor expansion: the determinant of the primitive fixing
// matrix, or of the unscaled one when the content is even and only that
// passes the Phi_d(j, j) ~ 0 certificate (tolerance 1e-10). Level 1 is never
// accepted. Throws LevelUnavailable when nothing passes.
LevelChoice select_level(const QuadraticPoint& p, long prec);

/// Taylor coefficients of Phi_d about (j0, j0):
/// Phi_d(X, Y) = sum beta_{i,k} (X - j0)^i (Y - j0)^k.
struct BetaTable {
  long d = 1;
  int max_order = 4;
  ComplexHP center;
  std::map<std::pair<int, int>, ComplexHP> beta;       // (i, k) != (0, 0), i + k <= max_order
  std::map<std::pair<int, int>, Rational> exact;       // filled for rational centres
  ComplexHP value_at_center;                           // beta_{0,0} = Phi_d(j0, j0)
  const ComplexHP& at(int i, int k) const { return beta.at({i, k}); }
};

// Numerical table; internal precision grows with the size of the terms so
// that the result has about `prec` correct bits.
BetaTable beta_table(long d, const ComplexHP& j0, int max_order, long prec);
// Exact table for a rational centre.
BetaTable beta_table(long d, const Rational& j0, int max_order);

// 3 k^2 with k odd
bool is_three_odd_square(long d);
// Whether masser_evaluate uses the q formula at p (|D| = 3 k^2, k odd).
inline bool uses_q_formula(const QuadraticPoint& p) { return is_three_odd_square(-p.D()); }

struct MasserResult {
  ComplexHP psi;   // psi = E2* E4 / E6 at tau
  ComplexHP raw;   // value of the p or q formula as printed
  long level = 0;
  bool q_case = false;            // |D| = 3 k^2 with k odd
  bool selector_mismatch = false;  // the same test on the level d disagrees
};

// psi(tau) from the Taylor coefficients of Phi_d. The printed formulas give
// (3/2) psi; the result is rescaled. Throws FormulaPole at j = 1728 and
// SmallDenominator when beta_{0,1} vanishes or j = 0 (where the beta terms
// are multiplied by zero and the formula degenerates).
MasserResult masser_evaluate(const QuadraticPoint& p, long prec);
ComplexHP masser_psi(const QuadraticPoint& p, long prec);

// chi*(tau) = psi(tau) (j(tau) - 1728) with psi from masser_psi.
ComplexHP chi_star_cm(const QuadraticPoint& p, long prec);

// psi = E2* E4 / E6 evaluated directly.
ComplexHP direct_psi(const ComplexHP& tau, long prec);

struct BridgeReport {
  bool series_identity = false;  // chi* (E4^3 - E6^2) = 1728 (E2 - Y) E4 E6 on q-expansions
  Real max_residual;             // |chi* - psi (j - 1728)| / max(1, |chi*|) at random points
  std::size_t samples = 0;
};

BridgeReport certify_chi_star_bridge(std::size_t samples, long prec, std::uint64_t seed = 0, long series_trunc = 60);

struct PointReport {
  QuadraticPoint form;
  ComplexHP tau, j, chi_star;
  LevelChoice level;
  std::string level_error;          // error kind when no level is certified
  std::optional<ComplexHP> masser;  // masser psi when applicable
  std::optional<Real> masser_diff;  // |masser - direct| / max(1, |direct|)
  std::string masser_error;         // error kind when not applicable
  ComplexHP direct;                 // direct psi
};

struct OrbitReport {
  long D = 0;
  std::vector<PointReport> points;
  std::vector<ComplexHP> j_symmetric;           // e_1..e_h of the j values
  Real j_integrality;                           // max distance to the nearest integer
  std::vector<ComplexHP> chi_symmetric;         // e_1..e_h of the chi* values
  std::vector<std::optional<Rational>> chi_rational;  // reconstructions (nullopt = failed)
  Real chi_imag;                                // max |Im e_k|
};

OrbitReport galois_orbit_check(long D, long prec);

// Best rational approximation with denominator <= max_den by continued
// fractions, accepted only when within tol of x.
std::optional<Rational> reconstruct_rational(const Real& x, const Integer& max_den, const Real& tol);

}  // namespace chistar
