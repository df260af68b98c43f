// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "bclab/polynomial.hpp"

namespace bclab {

inline constexpr unsigned kMaxExactLevels = 24;

/// A residue class of Q[x]/(p), as its canonical coefficient vector
/// (constant-first, length deg p).
using Residue = std::vector<mpq_class>;

/// Canonical representative of sum_n digits[n] x^n modulo p, by exact
/// rational long division. p must be nonconstant.
Residue reduce_mod_minpoly(std::span<const std::uint8_t> digits, const IntPoly& p);

/// Canonical representative of an arbitrary rational polynomial modulo p.
Residue reduce_mod_minpoly(std::vector<mpq_class> poly, const IntPoly& p);

/// The 2^N digit sums of A'_N(lambda0) as residues modulo the defining
/// polynomial of lambda0, tallied with multiplicity.
///
/// Residues are held as integer numerator vectors over one common
/// denominator so the tally can be built by the same translate-and-merge
/// doubling as the float point sets: the residue set at level n+1 is the
/// union of the level-n set and its translate by x^n mod p, and translation
/// preserves lexicographic order.
class ExactPointSet {
 public:
  const IntPoly& minpoly() const noexcept { return minpoly_; }
  unsigned levels() const noexcept { return levels_; }

  /// Number of distinct residues (the size of A_N without multiplicity).
  std::size_t distinct_count() const noexcept { return multiplicities_.size(); }

  std::span<const std::uint64_t> multiplicities() const noexcept { return multiplicities_; }

  /// Canonical rational coefficient vector of the i-th residue; residues are
  /// ordered lexicographically by their scaled numerators.
  Residue residue(std::size_t i) const;

  std::uint64_t total_multiplicity() const noexcept;

 private:
  friend ExactPointSet generate_exact(const IntPoly& minpoly, unsigned levels);

  IntPoly minpoly_;
  unsigned levels_ = 0;
  std::size_t dim_ = 0;
  mpz_class denominator_;
  // Exactly one of the two numerator stores is populated, row-major with
  // stride dim_.
  std::vector<std::int64_t> small_;
  std::vector<mpz_class> big_;
  std::vector<std::uint64_t> multiplicities_;
};

/// Enumerates all 2^N digit strings and tallies their residues modulo minpoly.
ExactPointSet generate_exact(const IntPoly& minpoly, unsigned levels);

/// Number of distinct values of A_N(lambda0).
inline std::size_t distinct_count(const ExactPointSet& eps) { return eps.distinct_count(); }

}  // namespace bclab
