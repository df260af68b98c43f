// SPDX-License-Identifier: Apache-2.0
#include "bclab/stats.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "bclab/error.hpp"

namespace bclab {

// ---------------------------------------------------------------------------
// CDF models

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kA = 1.5 * kSqrt2 + 2.0;
const double kB = kSqrt2 - 1.0;

double sqrt_half_cdf(double x) {
  if (x < kB) return kA * x * x / 2.0;
  if (x > 1.0 - kB) return 1.0 - kA * (1.0 - x) * (1.0 - x) / 2.0;
  return kA * kB * kB / 2.0 + kA * kB * (x - kB);
}

}  // namespace

CdfValue CdfModel::evaluate(double x) const noexcept {
  if (!(x >= 0.0)) return {0.0, true};
  if (x > 1.0) return {1.0, true};
  if (variant_ == CdfVariant::ExplicitSqrtHalf) return {sqrt_half_cdf(x), false};
  const std::size_t last = knot_values_.size() - 1;
  const double pos = x * static_cast<double>(last);
  const auto i = std::min(static_cast<std::size_t>(pos), last - 1);
  const double t = pos - static_cast<double>(i);
  const double v = knot_values_[i] + t * (knot_values_[i + 1] - knot_values_[i]);
  return {std::clamp(v, knot_values_[i], knot_values_[i + 1]), false};
}

CdfModel cdf_sqrt_half() {
  CdfModel m;
  m.variant_ = CdfVariant::ExplicitSqrtHalf;
  m.lambda_ = 1.0 / kSqrt2;
  return m;
}

CdfModel cdf_empirical(double lambda, unsigned level, std::size_t knots) {
  if (knots < 2) throw UsageError("empirical CDF needs at least 2 knots");
  if (level > kMaxCdfLevels) {
    throw ResourceError("empirical CDF level must be at most " + std::to_string(kMaxCdfLevels));
  }
  const PointSet ps = generate(lambda, level, Form::Standard);
  const auto values = ps.values();
  const auto total = static_cast<double>(values.size());
  CdfModel m;
  m.variant_ = CdfVariant::EmpiricalInterp;
  m.lambda_ = lambda;
  m.level_ = level;
  m.knot_values_.resize(knots);
  for (std::size_t i = 0; i < knots; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(knots - 1);
    const auto below = std::lower_bound(values.begin(), values.end(), x) - values.begin();
    m.knot_values_[i] = static_cast<double>(below) / total;
  }
  m.knot_values_.front() = 0.0;
  m.knot_values_.back() = 1.0;
  return m;
}

RescaledSequence rescale(const PointSet& ps, const CdfModel& cdf) {
  if (ps.form() != Form::Standard) {
    throw UsageError("rescale needs a Standard-form point set; convert the Primed set with to_standard()");
  }
  RescaledSequence out;
  out.lambda = ps.lambda();
  out.levels = ps.levels();
  if (cdf.variant() == CdfVariant::EmpiricalInterp && cdf.level() == ps.levels() &&
      cdf.lambda() == ps.lambda()) {
    out.warnings.emplace_back(
        "empirical CDF built from the same (lambda, N) point set; rescaled points collapse onto a lattice");
  }
  const auto values = ps.values();
  out.values.resize(values.size());
  std::transform(values.begin(), values.end(), out.values.begin(), [&](double x) { return cdf(x); });
  if (!std::is_sorted(out.values.begin(), out.values.end())) {
    throw Error(ErrorKind::Internal, "rescaling permuted the point order");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spacings

SpacingSet spacings(std::span<const double> sorted, unsigned ell) {
  if (ell < 1) throw UsageError("ell must be at least 1");
  if (ell >= sorted.size()) {
    throw UsageError("ell = " + std::to_string(ell) + " must be smaller than the point count " +
                     std::to_string(sorted.size()));
  }
  SpacingSet sp;
  sp.ell = ell;
  sp.point_count = sorted.size();
  const auto scale = static_cast<double>(sorted.size());
  sp.values.resize(sorted.size() - ell);
  for (std::size_t n = 0; n + ell < sorted.size(); ++n) {
    sp.values[n] = scale * (sorted[n + ell] - sorted[n]);
  }
  return sp;
}

SpacingSet spacings(const PointSet& ps, unsigned ell) {
  SpacingSet sp = spacings(ps.values(), ell);
  sp.lambda = ps.lambda();
  sp.levels = ps.levels();
  return sp;
}

SpacingSet spacings(const RescaledSequence& seq, unsigned ell) {
  SpacingSet sp = spacings(std::span<const double>(seq.values), ell);
  sp.lambda = seq.lambda;
  sp.levels = seq.levels;
  sp.rescaled = true;
  return sp;
}

double poisson_reference(unsigned ell, double s) {
  if (ell < 1) throw UsageError("ell must be at least 1");
  if (s < 0.0) return 0.0;
  if (s == 0.0) return ell == 1 ? 1.0 : 0.0;
  const double k = static_cast<double>(ell - 1);
  return std::exp(k * std::log(s) - s - std::lgamma(k + 1.0));
}

double poisson_cdf(unsigned ell, double s) {
  if (ell < 1) throw UsageError("ell must be at least 1");
  if (s <= 0.0) return 0.0;
  double term = 1.0;
  double sum = 1.0;
  for (unsigned k = 1; k < ell; ++k) {
    term *= s / static_cast<double>(k);
    sum += term;
  }
  return 1.0 - std::exp(-s) * sum;
}

double poisson_overlay(double s, unsigned ell, std::size_t point_count) {
  return 0.1 * ell * static_cast<double>(point_count) * poisson_reference(ell, s);
}

Histogram histogram(const SpacingSet& sp) {
  Histogram h;
  h.ell = sp.ell;
  h.point_count = sp.point_count;
  const double per_unit = 10.0 / static_cast<double>(sp.ell);
  for (double v : sp.values) {
    const double pos = v * per_unit;
    if (pos >= static_cast<double>(kHistogramBins)) {
      ++h.overflow;
      continue;
    }
    ++h.counts[static_cast<std::size_t>(std::max(pos, 0.0))];
  }
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    const double centre = 0.5 * (h.bin_left(i) + h.bin_right(i));
    h.overlay[i] = poisson_overlay(centre, sp.ell, sp.point_count);
  }
  return h;
}

GofStatistics gof_statistics(const SpacingSet& sp) {
  const std::size_t n = sp.values.size();
  if (n < kMinGofSamples) {
    throw UsageError("goodness-of-fit needs at least " + std::to_string(kMinGofSamples) +
                     " spacings, got " + std::to_string(n));
  }
  GofStatistics g;
  g.samples = n;
  std::vector<double> sorted = sp.values;
  std::sort(sorted.begin(), sorted.end());
  const auto total = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = poisson_cdf(sp.ell, sorted[i]);
    g.ks = std::max({g.ks, static_cast<double>(i + 1) / total - f, f - static_cast<double>(i) / total});
  }
  const Histogram h = histogram(sp);
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    if (h.overlay[i] <= 0.0) continue;
    const double diff = static_cast<double>(h.counts[i]) - h.overlay[i];
    g.chi2 += diff * diff / h.overlay[i];
  }
  g.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / total;
  double ss = 0.0;
  for (double v : sorted) ss += (v - g.mean) * (v - g.mean);
  g.variance = ss / (total - 1.0);
  return g;
}

// ---------------------------------------------------------------------------
// Pair correlation

std::uint64_t count_close_pairs(std::span<const double> sorted, double threshold) {
  // For each i, j advances to the first index with x_j - x_i > threshold.
  // Float subtraction is monotone in both arguments, so j never moves back.
  std::uint64_t unordered = 0;
  std::size_t j = 0;
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i + 1) j = i + 1;
    while (j < n && sorted[j] - sorted[i] <= threshold) ++j;
    unordered += j - i - 1;
  }
  return 2 * unordered;
}

namespace {

void check_grid(std::span<const double> s_grid) {
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.0)) throw UsageError("s-grid values must be nonnegative");
    if (i > 0 && s_grid[i] < s_grid[i - 1]) throw UsageError("s-grid must be ascending");
  }
}

}  // namespace

CorrelationCurve pair_correlation(const PointSet& ps, std::span<const double> s_grid) {
  check_grid(s_grid);
  CorrelationCurve c;
  c.s_grid.assign(s_grid.begin(), s_grid.end());
  c.lambda = ps.lambda();
  c.levels = ps.levels();
  c.form = ps.form();
  c.window_count = ps.size();
  const auto count = static_cast<double>(ps.size());
  for (double s : s_grid) {
    c.r_values.push_back(static_cast<double>(count_close_pairs(ps.values(), s / count)) / count);
  }
  return c;
}

CorrelationCurve pair_correlation_interval(const PointSet& ps, Interval window,
                                           std::span<const double> s_grid) {
  if (ps.form() != Form::Standard) {
    throw UsageError("interval-restricted pair correlation needs a Standard-form point set");
  }
  if (!(window.lo >= 0.0 && window.lo < window.hi && window.hi <= 1.0)) {
    throw UsageError("window must satisfy 0 <= a < b <= 1");
  }
  check_grid(s_grid);
  const auto values = ps.values();
  const auto first = std::lower_bound(values.begin(), values.end(), window.lo);
  const auto last = std::lower_bound(first, values.end(), window.hi);
  const auto inside = static_cast<std::size_t>(last - first);
  if (inside == 0) {
    throw UsageError("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                     ") contains no points");
  }
  const std::span<const double> sub(&*first, inside);
  CorrelationCurve c;
  c.s_grid.assign(s_grid.begin(), s_grid.end());
  c.lambda = ps.lambda();
  c.levels = ps.levels();
  c.form = ps.form();
  c.restricted_interval = window;
  c.window_count = inside;
  const auto count = static_cast<double>(inside);
  const double width = window.hi - window.lo;
  for (double s : s_grid) {
    c.r_values.push_back(static_cast<double>(count_close_pairs(sub, s * width / count)) / count);
  }
  return c;
}

double coincidence_rate(const ExactPointSet& eps) {
  std::uint64_t sum = 0;
  for (auto m : eps.multiplicities()) sum += m * (m - 1);
  return std::ldexp(static_cast<double>(sum), -static_cast<int>(eps.levels()));
}

// ---------------------------------------------------------------------------
// Gaps

double default_distinct_tol(const PointSet& ps) {
  return kDefaultDistinctRelTol * std::max(1.0, ps.support_max());
}

GapReport gaps(const PointSet& ps, std::optional<double> distinct_tol) {
  GapReport r;
  r.distinct_tol = distinct_tol.value_or(default_distinct_tol(ps));
  if (r.distinct_tol < 0.0) throw UsageError("distinct_tol must be nonnegative");
  const auto v = ps.values();
  const std::size_t gaps_count = v.size() - 1;
  bool have_min = false;
  for (std::size_t i = 0; i < gaps_count; ++i) {
    const double g = v[i + 1] - v[i];
    if (g > r.distinct_tol && (!have_min || g < r.min_gap)) {
      r.min_gap = g;
      have_min = true;
    }
    if (g > r.max_gap) {
      r.max_gap = g;
      r.max_gap_index = i;
    }
    if (i > 0 && i + 1 < gaps_count && g > r.interior_max_gap) {
      r.interior_max_gap = g;
      r.interior_max_gap_index = i;
    }
  }
  r.max_gap_left = v[r.max_gap_index];
  r.interior_max_gap_left = v[r.interior_max_gap_index];

  const unsigned n = ps.levels();
  const double lambda = ps.lambda();
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  r.ejk_applicable = lambda < golden && n % 2 == 1 && n >= 3;
  if (r.ejk_applicable) {
    const double scale = ps.form() == Form::Primed ? 1.0 : 1.0 - lambda;
    const double lam2 = lambda * lambda;
    double left = 0.0;
    double power = 1.0;
    for (unsigned j = 0; 2 * j + 3 <= n; ++j) {
      left += power;
      power *= lam2;
    }
    r.ejk_predicted_left = scale * left;
    r.ejk_predicted_gap = scale * std::pow(lambda, static_cast<double>(n - 1));
    const double tol = 8.0 * n * DBL_EPSILON * std::max(1.0, ps.support_max());

    const auto at = std::lower_bound(v.begin(), v.end(), r.ejk_predicted_left - tol);
    if (at != v.end() && std::abs(*at - r.ejk_predicted_left) <= tol) {
      auto next = at;
      while (next != v.end() && *next - *at <= r.distinct_tol) ++next;
      r.ejk_prediction_match = next != v.end() &&
                               std::abs((*next - *at) - r.ejk_predicted_gap) <= tol &&
                               std::abs(r.interior_max_gap - r.ejk_predicted_gap) <= tol;
    }
  }
  return r;
}

}  // namespace bclab
