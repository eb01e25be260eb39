#pragma once

#include <string>
#include <vector>

#include "chistar/ahm.hpp"
#include "chistar/poly.hpp"

namespace chistar {

struct RecoveryConfig {
  int B = 0;       // degree bound in j and chi*; 0 means 2|D_N|
  long T = 0;      // q-truncation of the base series; 0 means 40 N
  int max_escalations = 3;
};

// Degree bound and truncation that actually produced a polynomial.
struct RecoveryStats {
  int B = 0;
  long T = 0;
  std::vector<std::size_t> nullity;  // per X-coefficient
  std::vector<std::size_t> rows;     // equations used per X-coefficient
};

// Coefficients of prod_{g in D_N} (X - s(g tau)), lowest X-power first, as
// cyclotomic series.
std::vector<CycloAhm> dn_product(const RationalAhm& s, long N);

// Checks that a series has rational coefficients and only integral q-powers;
// throws CancellationFailure otherwise. The result has ramification 1.
RationalAhm rationalize(const CycloAhm& s);

// Classical modular polynomial Phi_N(X, Y) with Phi_N(j(g tau), j(tau)) = 0.
// Built from Galois-orbit power sums; `margin` extra q-coefficients of every
// recovered X-coefficient are verified to vanish (TruncationTooSmall
// otherwise).
BiPolynomial build_phi(long N, long margin = 10);

// Same polynomial from the direct product over D_N with cyclotomic
// coefficients (slow; an independent cross-check for small N).
BiPolynomial build_phi_product(long N, long margin = 10);

// Psi_N(X, Y, Z) with Psi_N(chi*(g tau), j(tau), chi*(tau)) = 0, integer
// coefficients, content 1 and positive leading term.
TriPolynomial build_psi(long N, const RecoveryConfig& cfg = {}, RecoveryStats* stats = nullptr);

struct PsiSanity {
  int deg_x = 0, deg_y = 0, deg_z = 0;
  bool deg_x_matches = false;   // deg_X = |D_N|
  bool y_dependent = false;     // deg_Y >= 1
  bool content_one = false;     // primitive integer coefficients
  bool squarefree_x = false;    // gcd(Psi, dPsi/dX) = 1 at random specialisations
  bool ok() const;
};

PsiSanity psi_sanity(const TriPolynomial& psi, long N);

}  // namespace chistar

namespace chistar {

// Memoised build_phi(d) for d <= kMaxPhiLevel; throws LevelUnavailable
// beyond that. Safe for concurrent use.
constexpr long kMaxPhiLevel = 60;
const BiPolynomial& modular_polynomial(long d);

}  // namespace chistar
