#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chistar/hecke.hpp"
#include "chistar/poly.hpp"
#include "chistar/real.hpp"

namespace chistar {

// Exact point x + i y of the upper half-plane.
using HPoint = std::pair<Rational, Rational>;

// Mobius action on an exact point; throws DomainError unless det > 0.
HPoint apply_exact(const GL2Matrix& g, const HPoint& tau);

/// Weakly H-special variety in H^n. Coordinates are 1-based. Each block is
/// named by its least element s_i; relations[s] = (s_i, g) means
/// tau_s = g tau_{s_i}. Constants fix tau_s for s in S_0, and every other
/// coordinate is free.
struct SpecialDescriptor {
  long n = 0;
  std::map<long, HPoint> constants;
  std::map<long, std::pair<long, GL2Matrix>> relations;

  // Blocks S_1..S_k in increasing order of their least element.
  std::vector<std::vector<long>> blocks() const;
  // Throws InvalidArgument when the data is not a valid partition.
  void validate() const;
};

// Lines "n <dim>", "const <idx> <re> <im>", "rel <block> <idx> a b c d";
// '#' starts a comment. Relation matrices are stored primitive. Throws
// ParseError (with the line number) or InvalidArgument.
SpecialDescriptor parse_descriptor(const std::string& text);
SpecialDescriptor load_descriptor(const std::string& path);
std::string format_descriptor(const SpecialDescriptor& d);

// every relation matrix has lower-left entry 0
bool is_gut(const SpecialDescriptor& d);

// Free coordinates from the fundamental-domain box, related ones by exact
// Mobius action, constants inserted.
std::vector<std::vector<HPoint>> sample_points(const SpecialDescriptor& d, std::size_t count, std::uint64_t seed);

struct VnResiduals {
  Real phi, psi_a, psi_b;  // Phi_N(W, Y), Psi_N(X, Y, Z), Psi_N(Z, W, X)
  Real max() const;
};

// Normalized residuals of the V_N' equations at
// (W, X, Y, Z) = (j(tau), chi*(tau), j(g tau), chi*(g tau)).
VnResiduals vn_membership(const BiPolynomial& phi, const TriPolynomial& psi, const ComplexHP& tau, const GL2Matrix& g,
                          long prec);

struct VnReport {
  VnResiduals worst;
  std::size_t evaluations = 0;
};

// vn_membership over seeded sample points for every g in D_N and `twists`
// random SL2(Z) multiples gamma g of each.
VnReport vn_check(const BiPolynomial& phi, const TriPolynomial& psi, long N, std::size_t samples, long prec,
                  std::uint64_t seed = 0, int twists = 5);

// Residual of Psi_N(chi(g tau), j(tau), chi(tau)): small for upper-triangular
// g, not small otherwise.
Real chi_relation_residual(const TriPolynomial& psi, const ComplexHP& tau, const GL2Matrix& g, long prec);

struct RankProbe {
  std::size_t rank = 0;                 // numeric rank of the affine span
  std::vector<double> singular_values;  // of the centred, column-scaled sample matrix
  std::vector<std::size_t> distinct;    // distinct values per coordinate
};

// Samples (j(tau), chi*(tau), j(g tau), chi*(g tau)) with g = (1 0; 0 N) and
// measures the affine span numerically. Needs count >= 8.
RankProbe plane_rank_probe(long N, std::size_t count, long prec, std::uint64_t seed = 0);

struct PushforwardPoint {
  std::vector<HPoint> source;
  // (j(tau_1), chi*(tau_1), ..., j(tau_n), chi*(tau_n)), or only the chi*
  // coordinates when projected
  std::vector<ComplexHP> image;
};

std::vector<PushforwardPoint> pushforward(const SpecialDescriptor& d, std::size_t count, long prec,
                                          bool chi_only = false, std::uint64_t seed = 0);

// Roots of sum c_k x^k (Aberth iteration). Throws PrecisionLoss if it does
// not converge.
std::vector<ComplexHP> polynomial_roots(const std::vector<ComplexHP>& coeffs, long prec);

// For tau_2 = g tau_1 with det g = N: whether (z1, z2) = (chi*(tau_1),
// chi*(tau_2)) lies on the curve obtained by eliminating j(tau_1), j(tau_2)
// from Psi_N(z2, j1, z1) = Psi_N(z1, j2, z2) = Phi_N(j1, j2) = 0. The
// resultant vanishes iff some root j1 of the first and j2 of the second
// satisfy Phi_N; returns the smallest normalized |Phi_N(j1, j2)|.
Real chi_pair_resultant(const BiPolynomial& phi, const TriPolynomial& psi, const ComplexHP& z1, const ComplexHP& z2,
                        long prec);

}  // namespace chistar
