// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bclab/exact.hpp"
#include "bclab/pointset.hpp"

namespace bclab {

// ---------------------------------------------------------------------------
// Rescaling by a CDF model

enum class CdfVariant { ExplicitSqrtHalf, EmpiricalInterp };

struct CdfValue {
  double value;
  bool clamped;  // argument was outside [0, 1]
};

/// A nondecreasing map of [0, 1] onto [0, 1] used to rescale point sets.
class CdfModel {
 public:
  CdfVariant variant() const noexcept { return variant_; }
  double lambda() const noexcept { return lambda_; }
  unsigned level() const noexcept { return level_; }
  std::span<const double> knots() const noexcept { return knot_values_; }

  CdfValue evaluate(double x) const noexcept;
  double operator()(double x) const noexcept { return evaluate(x).value; }

 private:
  friend CdfModel cdf_sqrt_half();
  friend CdfModel cdf_empirical(double lambda, unsigned level, std::size_t knots);

  CdfVariant variant_ = CdfVariant::ExplicitSqrtHalf;
  double lambda_ = 0.0;
  unsigned level_ = 0;
  std::vector<double> knot_values_;  // F at i / (knots - 1)
};

/// The closed-form CDF of the infinite Bernoulli convolution at 2^(-1/2):
/// a x^2 / 2 on [0, b], a b^2 / 2 + a b (x - b) on [b, 1 - b],
/// 1 - a (1 - x)^2 / 2 on [1 - b, 1], with a = 1.5 sqrt 2 + 2, b = sqrt 2 - 1.
CdfModel cdf_sqrt_half();

inline constexpr unsigned kMaxCdfLevels = 24;

/// Empirical CDF x -> #{points < x} / 2^M of A_M(lambda), sampled on an
/// equally spaced grid of `knots` x-positions and linearly interpolated.
CdfModel cdf_empirical(double lambda, unsigned level, std::size_t knots);

struct RescaledSequence {
  double lambda = 0.0;
  unsigned levels = 0;
  std::vector<double> values;
  std::vector<std::string> warnings;
};

/// Elementwise F(x) over a Standard-form point set. Order is preserved.
RescaledSequence rescale(const PointSet& ps, const CdfModel& cdf);

// ---------------------------------------------------------------------------
// Spacings and histograms

struct SpacingSet {
  unsigned ell = 1;
  std::size_t point_count = 0;  // normalisation constant
  double lambda = 0.0;
  unsigned levels = 0;
  bool rescaled = false;
  std::vector<double> values;
};

/// point_count * (sorted[n + ell] - sorted[n]) over a sorted sequence.
SpacingSet spacings(std::span<const double> sorted, unsigned ell);
SpacingSet spacings(const PointSet& ps, unsigned ell);
SpacingSet spacings(const RescaledSequence& seq, unsigned ell);

/// s^(ell-1) e^(-s) / (ell-1)!
double poisson_reference(unsigned ell, double s);

/// Cumulative of poisson_reference: 1 - e^(-s) sum_{k<ell} s^k / k!.
double poisson_cdf(unsigned ell, double s);

/// Expected count in a bin of width 0.1 ell centred at s, for point_count
/// points: 0.1 ell point_count P_ell(s).
double poisson_overlay(double s, unsigned ell, std::size_t point_count);

inline constexpr std::size_t kHistogramBins = 50;

struct Histogram {
  unsigned ell = 1;
  std::size_t point_count = 0;
  std::array<std::uint64_t, kHistogramBins> counts{};
  std::array<double, kHistogramBins> overlay{};
  std::uint64_t overflow = 0;

  double bin_width() const noexcept { return 0.1 * ell; }
  double bin_left(std::size_t i) const noexcept { return static_cast<double>(i) * ell / 10.0; }
  double bin_right(std::size_t i) const noexcept { return static_cast<double>(i + 1) * ell / 10.0; }
};

/// 50 left-closed bins on [0, 5 ell); values beyond go to `overflow`.
Histogram histogram(const SpacingSet& sp);

struct GofStatistics {
  double ks = 0.0;
  double chi2 = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinGofSamples = 100;

/// Kolmogorov-Smirnov distance to the level-ell Poisson spacing law, Pearson
/// chi-square of the 50-bin histogram against its overlay, sample moments.
GofStatistics gof_statistics(const SpacingSet& sp);

// ---------------------------------------------------------------------------
// Pair correlation

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct CorrelationCurve {
  std::vector<double> s_grid;
  std::vector<double> r_values;
  double lambda = 0.0;
  unsigned levels = 0;
  Form form = Form::Standard;
  std::optional<Interval> restricted_interval;
  std::size_t window_count = 0;  // points used; 2^N when unrestricted
};

/// Ordered pairs (i, j), i != j, of a sorted sequence with
/// x_j - x_i <= threshold in absolute value. Linear two-pointer sweep.
std::uint64_t count_close_pairs(std::span<const double> sorted, double threshold);

/// R2(s) = #{ordered pairs within s / 2^N} / 2^N for each s of the grid.
CorrelationCurve pair_correlation(const PointSet& ps, std::span<const double> s_grid);

/// Pair correlation of the points in the window J = [lo, hi) with
/// threshold s |J| / #(J, N), normalised by #(J, N).
CorrelationCurve pair_correlation_interval(const PointSet& ps, Interval window,
                                           std::span<const double> s_grid);

/// sum_i m_i (m_i - 1) / 2^N: the exact R2(0) of an algebraic parameter.
double coincidence_rate(const ExactPointSet& eps);

// ---------------------------------------------------------------------------
// Gaps

struct GapReport {
  double min_gap = 0.0;   // smallest consecutive gap above distinct_tol
  double max_gap = 0.0;
  std::size_t max_gap_index = 0;
  double max_gap_left = 0.0;
  double interior_max_gap = 0.0;  // excluding the first and last gaps
  std::size_t interior_max_gap_index = 0;
  double interior_max_gap_left = 0.0;
  double distinct_tol = 0.0;
  bool ejk_applicable = false;  // lambda < golden ratio, N odd, N >= 3
  bool ejk_prediction_match = false;
  double ejk_predicted_left = 0.0;
  double ejk_predicted_gap = 0.0;
};

/// Default distinctness tolerance: 2^-44 relative to the support size.
double default_distinct_tol(const PointSet& ps);

GapReport gaps(const PointSet& ps, std::optional<double> distinct_tol = std::nullopt);

}  // namespace bclab
