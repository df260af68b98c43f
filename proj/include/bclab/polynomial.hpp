// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bclab {

/// Integer polynomial, coefficients stored constant-first. Trailing zero
/// coefficients are trimmed so degree() is exact; the zero polynomial has
/// no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<std::int64_t> coeffs);

  /// Parses strings such as "x^3-2x-2", "2*x^2 - 1" or "1 - x - x^5".
  static IntPoly parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::int64_t coeff(int n) const noexcept;
  std::int64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  std::int64_t constant() const noexcept { return coeffs_.empty() ? 0 : coeffs_.front(); }

  double eval(double x) const noexcept;
  std::complex<long double> eval(std::complex<long double> z) const noexcept;

  /// Euclidean norm of the coefficient vector.
  double norm() const noexcept;

  /// "x^3 - 2x - 2" (descending) or "-2 - 2x + x^3" (ascending).
  std::string to_string(bool ascending = false) const;

  bool operator==(const IntPoly&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

}  // namespace bclab
