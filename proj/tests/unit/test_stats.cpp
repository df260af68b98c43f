// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "bclab/error.hpp"
#include "bclab/pointset.hpp"
#include "bclab/stats.hpp"
#include "oracles.hpp"

using namespace bclab;

namespace {
const double kA = 1.5 * std::sqrt(2.0) + 2.0;
const double kB = std::sqrt(2.0) - 1.0;
}  // namespace

// ---- CDF -----------------------------------------------------------------

TEST(CdfSqrtHalf, Anchors) {
  const auto F = cdf_sqrt_half();
  EXPECT_EQ(F(0.0), 0.0);
  EXPECT_NEAR(F(1.0), 1.0, 1e-15);
  EXPECT_NEAR(F(0.5), 0.5, 1e-15);
  EXPECT_NEAR(F(kB), std::sqrt(2.0) / 4.0, 1e-15);
}

TEST(CdfSqrtHalf, ContinuousAtBreakpoints) {
  const auto F = cdf_sqrt_half();
  for (double x : {kB, 1.0 - kB}) {
    const double left = std::nextafter(x, 0.0), right = std::nextafter(x, 1.0);
    EXPECT_NEAR(F(left), F(right), 1e-15);
  }
  // Piece formulas evaluated independently on both sides.
  EXPECT_NEAR(kA * kB * kB / 2, kA * kB * kB / 2 + kA * kB * (kB - kB), 1e-15);
  EXPECT_NEAR(kA * kB * kB / 2 + kA * kB * (1 - 2 * kB), 1 - kA * kB * kB / 2, 1e-15);
}

TEST(CdfSqrtHalf, MonotoneAndClamped) {
  const auto F = cdf_sqrt_half();
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = F(i / 1000.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  auto v = F.evaluate(-0.5);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_TRUE(v.clamped);
  v = F.evaluate(1.5);
  EXPECT_EQ(v.value, 1.0);
  EXPECT_TRUE(v.clamped);
  EXPECT_FALSE(F.evaluate(0.3).clamped);
}

TEST(CdfEmpirical, HalfIsIdentity) {
  const auto F = cdf_empirical(0.5, 10, 1025);
  for (int i = 0; i <= 1000; ++i) EXPECT_NEAR(F(i / 1000.0), i / 1000.0, std::ldexp(1.0, -10));
  EXPECT_EQ(F(0.0), 0.0);
  EXPECT_EQ(F(1.0), 1.0);
}

TEST(CdfEmpirical, ConvergesToClosedForm) {
  const auto E = cdf_empirical(std::sqrt(0.5), 20, 4096);
  const auto F = cdf_sqrt_half();
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) sup = std::max(sup, std::fabs(E(i / 20000.0) - F(i / 20000.0)));
  EXPECT_LT(sup, 0.01);
}

TEST(CdfEmpirical, Errors) {
  EXPECT_THROW(cdf_empirical(0.6, 10, 1), UsageError);
  EXPECT_THROW(cdf_empirical(0.6, kMaxCdfLevels + 1, 64), ResourceError);
}

TEST(Rescale, PreservesOrderAndWarns) {
  const auto ps = generate(0.7, 14, Form::Standard);
  const auto seq = rescale(ps, cdf_sqrt_half());
  EXPECT_TRUE(std::is_sorted(seq.values.begin(), seq.values.end()));
  EXPECT_EQ(seq.values.front(), 0.0);
  EXPECT_TRUE(seq.warnings.empty());

  const auto self = rescale(ps, cdf_empirical(0.7, 14, 256));
  EXPECT_FALSE(self.warnings.empty());

  const auto lattice = generate(0.5, 10, Form::Standard);
  const auto same = rescale(lattice, cdf_empirical(0.5, 12, 4097));
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_NEAR(same.values[i], lattice.values()[i], 1e-12);

  EXPECT_THROW(rescale(generate(0.7, 6, Form::Primed), cdf_sqrt_half()), UsageError);
}

// ---- spacings, histogram, goodness of fit --------------------------------

TEST(Spacings, LatticeIsExact) {
  for (unsigned n : {4U, 10U, 16U}) {
    const auto ps = generate(0.5, n, Form::Standard);
    for (unsigned ell : {1U, 3U}) {
      const auto sp = spacings(ps, ell);
      ASSERT_EQ(sp.values.size(), ps.size() - ell);
      for (double v : sp.values) ASSERT_EQ(v, double(ell));
    }
  }
}

TEST(Spacings, MeanTelescopes) {
  const auto ps = generate(0.66, 12, Form::Standard);
  const auto seq = rescale(ps, cdf_sqrt_half());
  const auto sp = spacings(seq, 1);
  const auto g = gof_statistics(sp);
  const double n = double(ps.size());
  EXPECT_NEAR(g.mean, n * (seq.values.back() - seq.values.front()) / (n - 1), 1e-9);
}

TEST(Spacings, Errors) {
  const auto ps = generate(0.6, 3, Form::Standard);
  EXPECT_THROW(spacings(ps, 0), UsageError);
  EXPECT_THROW(spacings(ps, 8), UsageError);
}

TEST(Poisson, Reference) {
  EXPECT_NEAR(poisson_reference(1, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(poisson_reference(2, 0.0), 0.0);
  for (unsigned ell : {1U, 2U, 3U}) {
    // Composite Simpson on [0, 60].
    const int m = 200000;
    const double h = 60.0 / m;
    double acc = poisson_reference(ell, 0) + poisson_reference(ell, 60);
    for (int i = 1; i < m; ++i) acc += (i % 2 ? 4 : 2) * poisson_reference(ell, i * h);
    EXPECT_NEAR(acc * h / 3, 1.0, 1e-8);
    EXPECT_NEAR(poisson_cdf(ell, 60.0), 1.0, 1e-12);
  }
  EXPECT_NEAR(poisson_cdf(1, 1.0), 1 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(poisson_cdf(2, 1.0), 1 - 2 * std::exp(-1.0), 1e-15);
}

TEST(Poisson, OverlayScaling) {
  // 0.1 * 2^22 * e^-1 evaluated directly.
  EXPECT_NEAR(poisson_overlay(1.0, 1, std::size_t{1} << 22), 0.1 * 4194304.0 * 0.36787944117144233, 1e-6);
  EXPECT_NEAR(poisson_overlay(1.0, 1, std::size_t{1} << 22), 154299.82, 0.01);
  EXPECT_NEAR(poisson_overlay(2.0, 2, 1000), 0.2 * 1000 * 2 * std::exp(-2.0), 1e-12);
}

TEST(Histogram, LatticeSingleBin) {
  const auto ps = generate(0.5, 10, Form::Standard);
  const auto h = histogram(spacings(ps, 1));
  for (std::size_t i = 0; i < kHistogramBins; ++i) EXPECT_EQ(h.counts[i], i == 10 ? 1023U : 0U) << i;
  EXPECT_EQ(h.overflow, 0U);
  EXPECT_DOUBLE_EQ(h.bin_left(10), 1.0);
}

TEST(Histogram, EmptyAndConservation) {
  const auto empty = histogram(SpacingSet{});
  EXPECT_EQ(std::accumulate(empty.counts.begin(), empty.counts.end(), std::uint64_t{0}), 0U);
  const auto sp = spacings(generate(0.62, 14, Form::Standard), 2);
  const auto h = histogram(sp);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), h.overflow), sp.values.size());
  for (std::size_t i = 0; i < kHistogramBins; ++i)
    EXPECT_DOUBLE_EQ(h.overlay[i], poisson_overlay((h.bin_left(i) + h.bin_right(i)) / 2, 2, sp.point_count));
}

TEST(Histogram, LeftClosedBins) {
  SpacingSet sp;
  sp.ell = 1;
  sp.point_count = 4;
  sp.values = {0.0, 0.1, 4.9999, 5.0};
  const auto h = histogram(sp);
  EXPECT_EQ(h.counts[0], 1U);
  EXPECT_EQ(h.counts[1], 1U);
  EXPECT_EQ(h.counts[49], 1U);
  EXPECT_EQ(h.overflow, 1U);
}

TEST(Gof, ExponentialSelfTest) {
  // Inverse-CDF images of a shuffled uniform grid.
  const std::size_t n = 100000;
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (i + 0.5) / n;
  std::shuffle(u.begin(), u.end(), std::mt19937_64(5));
  SpacingSet sp;
  sp.ell = 1;
  sp.point_count = n;
  for (double x : u) sp.values.push_back(-std::log1p(-x));
  const auto g = gof_statistics(sp);
  EXPECT_LT(g.ks, 0.01);
  EXPECT_NEAR(g.mean, 1.0, 0.01);
  EXPECT_NEAR(g.variance, 1.0, 0.05);
}

TEST(Gof, LatticeDistance) {
  // All spacings equal 1: the sup is the left limit at s = 1, 1 - e^-1.
  const auto g = gof_statistics(spacings(generate(0.5, 10, Form::Standard), 1));
  EXPECT_NEAR(g.ks, 1 - std::exp(-1.0), 1e-12);
  EXPECT_EQ(g.mean, 1.0);
  EXPECT_EQ(g.variance, 0.0);
}

TEST(Gof, TooFewSamples) {
  EXPECT_THROW(gof_statistics(spacings(generate(0.6, 6, Form::Standard), 1)), UsageError);
}

// ---- pair correlation ------------------------------------------------------

TEST(PairCorrelation, LatticeFormula) {
  for (unsigned n = 4; n <= 16; ++n) {
    const auto ps = generate(0.5, n, Form::Standard);
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.5, 7.0};
    const auto c = pair_correlation(ps, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(c.r_values[i], oracle::lattice_r2(grid[i], n));
  }
  const std::vector<double> g{2.5};
  EXPECT_EQ(pair_correlation(generate(0.5, 4, Form::Standard), g).r_values[0], 3.625);
}

TEST(PairCorrelation, Saturates) {
  const auto ps = generate(0.6, 8, Form::Standard);
  const std::vector<double> g{1e9};
  EXPECT_EQ(pair_correlation(ps, g).r_values[0], 255.0);
}

TEST(PairCorrelation, MatchesAllPairs) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.52, 0.9);
  for (int t = 0; t < 10; ++t) {
    const double lambda = u(rng);
    const unsigned n = 6 + t % 6;
    for (Form f : {Form::Standard, Form::Primed}) {
      const auto ps = generate(lambda, n, f);
      const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
      const auto c = pair_correlation(ps, grid);
      std::vector<double> x(ps.values().begin(), ps.values().end());
      const double count = double(ps.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_EQ(c.r_values[i], double(oracle::all_pairs(x, grid[i] / count)) / count);
    }
  }
}

TEST(PairCorrelation, MonotoneInS) {
  const auto ps = generate(0.58, 14, Form::Standard);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(i * 0.25);
  const auto c = pair_correlation(ps, grid);
  EXPECT_TRUE(std::is_sorted(c.r_values.begin(), c.r_values.end()));
}

TEST(PairCorrelation, UniformRandomIsNearTwoS) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(1 << 16);
  for (auto& v : x) v = u(rng);
  std::sort(x.begin(), x.end());
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const double r = double(count_close_pairs(x, s / x.size())) / x.size();
    EXPECT_GE(r / s, 1.8);
    EXPECT_LE(r / s, 2.2);
  }
}

TEST(PairCorrelation, GridErrors) {
  const auto ps = generate(0.6, 6, Form::Standard);
  const std::vector<double> desc{2.0, 1.0}, neg{-1.0};
  EXPECT_THROW(pair_correlation(ps, desc), UsageError);
  EXPECT_THROW(pair_correlation(ps, neg), UsageError);
}

TEST(PairCorrelationInterval, HalfWindowLattice) {
  const auto ps = generate(0.5, 4, Form::Standard);
  const std::vector<double> grid{0.5, 1.0, 2.5, 7.0};
  const auto c = pair_correlation_interval(ps, {0.0, 0.5}, grid);
  EXPECT_EQ(c.window_count, 8U);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(c.r_values[i], oracle::lattice_r2(grid[i], 3));
}

TEST(PairCorrelationInterval, MatchesAllPairs) {
  const auto ps = generate(0.64, 10, Form::Standard);
  const Interval J{0.2, 0.7};
  std::vector<double> x;
  for (double v : ps.values())
    if (v >= J.lo && v < J.hi) x.push_back(v);
  const std::vector<double> grid{0.5, 1.0, 3.0};
  const auto c = pair_correlation_interval(ps, J, grid);
  ASSERT_EQ(c.window_count, x.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i] * (J.hi - J.lo) / x.size();
    EXPECT_EQ(c.r_values[i], double(oracle::all_pairs(x, t)) / x.size());
  }
}

TEST(PairCorrelationInterval, Errors) {
  const std::vector<double> grid{1.0};
  const auto cantor = generate(0.3, 8, Form::Standard);
  EXPECT_THROW(pair_correlation_interval(cantor, {0.4, 0.6}, grid), UsageError);
  EXPECT_THROW(pair_correlation_interval(cantor, {0.6, 0.4}, grid), UsageError);
  EXPECT_THROW(pair_correlation_interval(generate(0.6, 6, Form::Primed), {0.0, 0.5}, grid), UsageError);
}

// ---- gaps ------------------------------------------------------------------

TEST(Gaps, HalfLattice) {
  for (unsigned n = 2; n <= 12; ++n) {
    const auto r = gaps(generate(0.5, n, Form::Primed));
    EXPECT_EQ(r.min_gap, std::ldexp(1.0, -int(n - 1)));
    EXPECT_EQ(r.max_gap, std::ldexp(1.0, -int(n - 1)));
  }
}

TEST(Gaps, EjkExample) {
  const auto r = gaps(generate(0.6, 5, Form::Primed));
  EXPECT_TRUE(r.ejk_applicable);
  EXPECT_TRUE(r.ejk_prediction_match);
  // Several gaps tie at lambda^4; the predicted one starts at 1 + lambda^2.
  EXPECT_NEAR(r.ejk_predicted_left, 1.36, 1e-14);
  EXPECT_NEAR(r.ejk_predicted_gap, 0.1296, 1e-14);
  EXPECT_NEAR(r.interior_max_gap, 0.1296, 1e-14);
  EXPECT_NEAR(r.max_gap, 0.1296, 1e-14);
}

TEST(Gaps, LargestGapLaw) {
  for (double lambda : {0.55, 0.6, 0.615, 0.75, 0.9}) {
    for (unsigned n = 3; n <= 15; ++n) {
      const auto ps = generate(lambda, n, Form::Primed);
      const auto r = gaps(ps);
      // Brute-force max gap on the Horner oracle.
      const auto ref = oracle::horner_points(lambda, n, false);
      double big = 0;
      for (std::size_t i = 1; i < ref.size(); ++i) big = std::max(big, ref[i] - ref[i - 1]);
      const double tol = oracle::ulp_tol(n, ps.support_max());
      EXPECT_NEAR(r.max_gap, std::pow(lambda, n - 1), tol) << lambda << " " << n;
      EXPECT_NEAR(r.max_gap, big, tol);
    }
  }
}

TEST(Gaps, EjkNotApplicableAboveGolden) {
  const auto r = gaps(generate(0.7, 7, Form::Primed));
  EXPECT_FALSE(r.ejk_applicable);
  EXPECT_FALSE(r.ejk_prediction_match);
  EXPECT_FALSE(gaps(generate(0.6, 6, Form::Primed)).ejk_applicable);
}

TEST(Gaps, ToleranceSkipsCoincidences) {
  const double golden = (std::sqrt(5.0) - 1) / 2;
  const auto ps = generate(golden, 8, Form::Primed);
  const auto r = gaps(ps);
  EXPECT_GT(r.min_gap, default_distinct_tol(ps));
  EXPECT_THROW(gaps(ps, -1.0), UsageError);
}

// ---- coincidences ---------------------------------------------------------

TEST(Coincidence, GoldenRateOracle) {
  const auto p = IntPoly::parse("x^2+x-1");
  for (unsigned n = 1; n <= 12; ++n) {
    std::map<std::pair<long, long>, std::uint64_t> t;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) ++t[oracle::golden_residue(m, n)];
    double sum = 0;
    for (const auto& [k, c] : t) sum += double(c) * double(c - 1);
    EXPECT_EQ(coincidence_rate(generate_exact(p, n)), sum / std::ldexp(1.0, int(n)));
  }
}
