#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chistar/rational.hpp"

namespace chistar {

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

// Homogeneous system rows * x = 0.
struct LinearSystem {
  std::vector<RationalVector> rows;
  std::size_t ncols = 0;

  void add_row(RationalVector row);
};

// Basis of the exact rational nullspace. Each basis vector has a 1 in its own
// free coordinate and 0 in the other free coordinates.
std::vector<RationalVector> nullspace(const LinearSystem& sys);

std::size_t rank(const LinearSystem& sys);

// Fraction-free (Bareiss) row echelon form. Pivots are chosen as the entry of
// largest absolute value in the current column. Returns the pivot columns.
std::vector<std::size_t> bareiss_echelon(std::vector<IntegerVector>& m, std::size_t ncols);

// Nullspace of an integer system, same conventions as nullspace().
std::vector<RationalVector> integer_nullspace(std::vector<IntegerVector> rows, std::size_t ncols);

// Scales a rational row to a primitive integer row (content 1, same sign).
IntegerVector clear_denominators(const RationalVector& row);

// Indices of a maximal set of rows that are linearly independent modulo the
// prime p, chosen greedily in the given order.
std::vector<std::size_t> independent_rows_mod_p(const std::vector<IntegerVector>& rows, std::size_t ncols,
                                                std::uint64_t p = (std::uint64_t{1} << 61) - 1);

// Solves A x = b exactly; returns false when inconsistent. When the solution
// is not unique the free coordinates are set to zero.
bool solve_linear(const std::vector<RationalVector>& a, const RationalVector& b, RationalVector& x);

}  // namespace chistar

namespace chistar {

using ModVector = std::vector<std::uint64_t>;

// Nullspace basis modulo the prime p of the integer system, in the same
// convention as nullspace(). Rows are reduced modulo p first.
std::vector<ModVector> nullspace_mod_p(const std::vector<IntegerVector>& rows, std::size_t ncols, std::uint64_t p);

// Reduced row echelon form modulo p (in place); returns the pivot columns.
std::vector<std::size_t> rref_mod_p(std::vector<ModVector>& m, std::size_t ncols, std::uint64_t p);

std::uint64_t inverse_mod_p(std::uint64_t a, std::uint64_t p);

// Rational r = n/d with r = a (mod m), |n|, d <= sqrt(m/2); false when none exists.
bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out);

// Primes below 2^62 in decreasing order (index 0 is the largest).
std::uint64_t modular_prime(std::size_t index);

}  // namespace chistar
