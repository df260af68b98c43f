// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bclab {

/// Standard: (1 - lambda) * sum a_n lambda^n, supported in [0, 1).
/// Primed:   sum a_n lambda^n, supported in [0, 1 / (1 - lambda)).
enum class Form : std::uint8_t { Standard = 0, Primed = 1 };

inline constexpr unsigned kMaxFloatLevels = 28;

/// Relative tolerance below which two float points are treated as one.
inline constexpr double kDefaultDistinctRelTol = 0x1p-44;

/// The 2^N digit sums of a finite Bernoulli convolution, sorted, with
/// multiplicity. Immutable once built.
class PointSet {
 public:
  PointSet(double lambda, unsigned levels, Form form, std::vector<double> values);

  double lambda() const noexcept { return lambda_; }
  unsigned levels() const noexcept { return levels_; }
  Form form() const noexcept { return form_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// lambda <= 1/2 is accepted but is outside the range (1/2, 1) of interest.
  bool outside_interesting_range() const noexcept { return lambda_ <= 0.5; }

  /// Largest value of the support for this form: 1 - lambda^N or
  /// (1 - lambda^N) / (1 - lambda).
  double support_max() const noexcept;

 private:
  double lambda_;
  unsigned levels_;
  Form form_;
  std::vector<double> values_;
};

/// Builds A_N(lambda) (Standard) or A'_N(lambda) (Primed) by N sorted merges
/// A -> merge(lambda*A, lambda*A + 1) starting from {0}. Duplicates are kept.
PointSet generate(double lambda, unsigned levels, Form form);

/// Standard form of a Primed set (elementwise multiply by 1 - lambda).
PointSet to_standard(const PointSet& primed);

}  // namespace bclab
