// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bclab/polynomial.hpp"

namespace bclab {

/// A {-1, 0, +1} polynomial with constant term +1.
class SignedPoly {
 public:
  /// coeffs[0] must be +1 and every coefficient in {-1, 0, 1}.
  explicit SignedPoly(std::vector<std::int8_t> coeffs);

  const std::vector<std::int8_t>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double eval(double x) const noexcept;
  IntPoly to_int_poly() const;

 private:
  std::vector<std::int8_t> coeffs_;
};

struct GreedyExpansion {
  double lambda = 0.0;
  unsigned k = 0;
  std::vector<std::uint8_t> digits;  // digits[n - 1] = c_n, n = 1..k; c_1 = 1
  double remainder = 0.0;            // 1 - sum c_n lambda^n, in [0, lambda^k)
};

/// c_1 = 1, then c_n = 1 iff the running remainder is at least lambda^n.
GreedyExpansion greedy_expansion(double lambda, unsigned k);

struct NearbyZero {
  SignedPoly poly;  // 1 - sum c_n x^n, trailing zero digits dropped
  double root = 0.0;
};

/// The zero of p(x) = 1 - sum c_n x^n inside [lambda, lambda + lambda^k),
/// located by bisection to 2^-50.
NearbyZero nearest_zero_above(double lambda, unsigned k);

/// All complex roots, real roots first (descending), then conjugate pairs
/// with positive imaginary part first.
std::vector<std::complex<double>> poly_roots(const IntPoly& p);

enum class Verdict { Pisot, Garsia, Neither };

const char* verdict_name(Verdict v) noexcept;

inline constexpr double kClassifyMargin = 1e-9;

struct AlgebraicClass {
  IntPoly poly;
  Verdict verdict = Verdict::Neither;
  std::vector<std::complex<double>> roots;
  std::optional<double> dominant_root;  // largest real root > 1
  std::optional<double> reciprocal;     // 1 / dominant_root
  double margin = 0.0;                  // min | |r| - 1 | over all roots
  bool borderline = false;
  double max_residual = 0.0;            // max |p(r)| / ||p||
  std::string explanation;
};

AlgebraicClass classify(const IntPoly& p);

/// Forbidden block (1 u_1 ... u_k) for the relation 1 + sum c_n lambda^n = 0,
/// with u_n = 1 iff c_n = +1. c holds c_1..c_k.
std::string forbidden_block(std::span<const int> c);

/// Replacement block (0 v_1 ... v_k), v_n = 1 iff c_n = -1.
std::string replacement_block(std::span<const int> c);

/// When p (up to sign) has all coefficients in {-1, 0, 1} and constant term
/// +-1, returns c_1..c_k of the normalised relation 1 + sum c_n x^n.
std::optional<std::vector<int>> signed_relation(const IntPoly& p);

struct GrowthReport {
  std::string forbidden_block;
  std::size_t automaton_size = 0;
  double rho = 1.0;
  std::vector<std::uint64_t> word_counts;  // word_counts[N - 1] for N = 1..cap
  std::string rho_method;                  // "power-iteration" or "eigen-solver"
  bool degenerate = false;
  bool ratio_consistent = false;           // |count[30]/count[29] - rho| < 1e-6
};

inline constexpr unsigned kWordCountCap = 30;

/// Growth rate of the subshift of {0,1} words avoiding block.
GrowthReport sft_growth_rate(const std::string& block, unsigned count_cap = kWordCountCap);

}  // namespace bclab
