// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bclab/error.hpp"
#include "bclab/pointset.hpp"
#include "bclab/stats.hpp"
#include "oracles.hpp"

using namespace bclab;

TEST(Generate, PrimedFourPoints) {
  const auto ps = generate(0.75, 2, Form::Primed);
  const std::vector<double> want{0.0, 0.75, 1.0, 1.75};
  ASSERT_EQ(ps.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ps.values()[i], want[i]);
}

TEST(Generate, HalfIsBinaryLattice) {
  for (unsigned n = 1; n <= 16; ++n) {
    const auto ps = generate(0.5, n, Form::Standard);
    ASSERT_EQ(ps.size(), std::size_t{1} << n);
    for (std::size_t k = 0; k < ps.size(); ++k) ASSERT_EQ(ps.values()[k], std::ldexp(double(k), -int(n)));
  }
}

TEST(Generate, GoldenCoincidenceAtThreeLevels) {
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto ps = generate(golden, 3, Form::Primed);
  const auto v = ps.values();
  const double tol = default_distinct_tol(ps);
  int near_zero = 0;
  for (std::size_t i = 1; i < v.size(); ++i) near_zero += (v[i] - v[i - 1]) <= tol;
  EXPECT_EQ(near_zero, 1);
}

TEST(Generate, MatchesHornerBruteForce) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.52, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    const double lambda = u(rng);
    for (unsigned n : {1U, 5U, 9U, 12U}) {
      for (Form f : {Form::Standard, Form::Primed}) {
        const auto ps = generate(lambda, n, f);
        const auto ref = oracle::horner_points(lambda, n, f == Form::Standard);
        const double tol = oracle::ulp_tol(n, ps.support_max());
        ASSERT_EQ(ps.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_NEAR(ps.values()[i], ref[i], tol) << lambda << " " << n;
      }
    }
  }
}

TEST(Generate, SortedWithSupportBounds) {
  for (double lambda : {0.3, 0.55, 0.7, 0.95}) {
    const auto ps = generate(lambda, 14, Form::Standard);
    const auto v = ps.values();
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_LT(v.back(), 1.0);
    EXPECT_NEAR(v.back(), ps.support_max(), 1e-12);
  }
}

TEST(Generate, StandardIsScaledPrimed) {
  const auto primed = generate(0.63, 10, Form::Primed);
  const auto std_form = to_standard(primed);
  const auto direct = generate(0.63, 10, Form::Standard);
  ASSERT_EQ(std_form.size(), direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_EQ(std_form.values()[i], direct.values()[i]);
  EXPECT_EQ(std_form.form(), Form::Standard);
}

TEST(Generate, OutsideRangeIsFlagged) {
  EXPECT_TRUE(generate(0.4, 4, Form::Standard).outside_interesting_range());
  EXPECT_FALSE(generate(0.6, 4, Form::Standard).outside_interesting_range());
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate(0.0, 4, Form::Standard), DomainError);
  EXPECT_THROW(generate(1.0, 4, Form::Standard), DomainError);
  EXPECT_THROW(generate(std::nan(""), 4, Form::Standard), DomainError);
  EXPECT_THROW(generate(0.6, 0, Form::Standard), ResourceError);
  EXPECT_THROW(generate(0.6, kMaxFloatLevels + 1, Form::Standard), ResourceError);
}
