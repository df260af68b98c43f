// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bclab/bclab.h"

namespace {

std::string take(char* s) {
  std::string out = s;
  bc_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, GenerateAndAccessors) {
  bc_pointset* ps = nullptr;
  ASSERT_EQ(bc_generate(0.75, 2, BC_FORM_PRIMED, &ps), BC_OK);
  ASSERT_EQ(bc_pointset_size(ps), 4U);
  const double* v = bc_pointset_values(ps);
  EXPECT_EQ(v[1], 0.75);
  EXPECT_EQ(v[3], 1.75);
  EXPECT_EQ(bc_pointset_levels(ps), 2U);
  EXPECT_EQ(bc_pointset_form(ps), BC_FORM_PRIMED);
  bc_pointset* st = nullptr;
  ASSERT_EQ(bc_pointset_to_standard(ps, &st), BC_OK);
  EXPECT_EQ(bc_pointset_values(st)[3], 0.25 * 1.75);
  bc_pointset_free(st);
  bc_pointset_free(ps);
}

TEST(CApi, ErrorCodesAndMessages) {
  bc_pointset* ps = nullptr;
  EXPECT_EQ(bc_generate(1.5, 4, BC_FORM_STANDARD, &ps), BC_ERR_DOMAIN);
  EXPECT_NE(std::string(bc_last_error()).find("lambda"), std::string::npos);
  EXPECT_EQ(bc_generate(0.6, 40, BC_FORM_STANDARD, &ps), BC_ERR_RESOURCE);
  EXPECT_EQ(bc_generate(0.6, 4, BC_FORM_STANDARD, nullptr), BC_ERR_USAGE);
  char* out = nullptr;
  EXPECT_EQ(bc_classify_json("x^^2", &out), BC_ERR_USAGE);
  EXPECT_EQ(out, nullptr);
}

TEST(CApi, PairCorrelationLattice) {
  bc_pointset* ps = nullptr;
  ASSERT_EQ(bc_generate(0.5, 4, BC_FORM_STANDARD, &ps), BC_OK);
  const double s[] = {0.5, 2.5};
  double r[2];
  ASSERT_EQ(bc_pair_correlation(ps, s, 2, r), BC_OK);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], 3.625);
  std::size_t window = 0;
  ASSERT_EQ(bc_pair_correlation_interval(ps, 0.0, 0.5, s, 2, r, &window), BC_OK);
  EXPECT_EQ(window, 8U);
  EXPECT_EQ(bc_pair_correlation_interval(ps, 0.5, 0.2, s, 2, r, &window), BC_ERR_USAGE);
  char* csv = nullptr;
  ASSERT_EQ(bc_correlation_csv(s, r, 2, &csv), BC_OK);
  EXPECT_EQ(take(csv).rfind("s,r2\n", 0), 0U);
  bc_pointset_free(ps);
}

TEST(CApi, SpacingPipeline) {
  bc_pointset* ps = nullptr;
  ASSERT_EQ(bc_generate(0.70880447, 14, BC_FORM_STANDARD, &ps), BC_OK);
  bc_cdf* cdf = nullptr;
  ASSERT_EQ(bc_cdf_sqrt_half(&cdf), BC_OK);
  int clamped = 0;
  EXPECT_NEAR(bc_cdf_eval(cdf, 0.5, &clamped), 0.5, 1e-15);
  EXPECT_EQ(clamped, 0);
  bc_sequence* seq = nullptr;
  ASSERT_EQ(bc_rescale(ps, cdf, &seq), BC_OK);
  EXPECT_EQ(bc_sequence_size(seq), 1U << 14);
  EXPECT_EQ(bc_sequence_warning_count(seq), 0U);
  bc_spacings* sp = nullptr;
  ASSERT_EQ(bc_spacings_sequence(seq, 1, &sp), BC_OK);
  bc_gof g{};
  ASSERT_EQ(bc_gof_statistics(sp, &g), BC_OK);
  EXPECT_GT(g.samples, 0U);
  EXPECT_LT(g.ks, 0.2);
  bc_histogram* h = nullptr;
  ASSERT_EQ(bc_histogram_build(sp, &h), BC_OK);
  std::uint64_t total = bc_histogram_overflow(h);
  for (std::size_t i = 0; i < bc_histogram_bins(h); ++i) total += bc_histogram_count(h, i);
  EXPECT_EQ(total, bc_spacings_size(sp));
  EXPECT_NEAR(bc_histogram_overlay(h, 10), bc_poisson_overlay(1.05, 1, 1U << 14), 1e-9);
  bc_histogram_free(h);
  bc_spacings_free(sp);
  bc_sequence_free(seq);
  bc_cdf_free(cdf);
  bc_pointset_free(ps);
}

TEST(CApi, ExactBackend) {
  bc_exact* e = nullptr;
  ASSERT_EQ(bc_generate_exact("x^2+x-1", 3, &e), BC_OK);
  EXPECT_EQ(bc_exact_distinct_count(e), 7U);
  EXPECT_EQ(bc_exact_coincidence_rate(e), 0.25);
  bc_exact_free(e);
  ASSERT_EQ(bc_generate_exact("[-2, 0, 1]", 8, &e), BC_OK);
  EXPECT_EQ(bc_exact_distinct_count(e), 256U);
  bc_exact_free(e);
  const std::uint8_t digits[] = {0, 0, 1};
  char* out = nullptr;
  ASSERT_EQ(bc_reduce_mod_minpoly(digits, 3, "2x^2-1", &out), BC_OK);
  EXPECT_EQ(take(out), "[\"1/2\",\"0\"]");
}

TEST(CApi, AlgebraicJson) {
  char* out = nullptr;
  ASSERT_EQ(bc_classify_json("x^2-x-1", &out), BC_OK);
  EXPECT_NE(take(out).find("\"Pisot\""), std::string::npos);
  double root = 0;
  char* poly = nullptr;
  ASSERT_EQ(bc_nearest_zero(0.75, 5, &root, &poly), BC_OK);
  EXPECT_EQ(take(poly), "1 - x - x^5");
  EXPECT_NEAR(root, 0.754878, 1e-6);
  const int c[] = {-1, -1};
  ASSERT_EQ(bc_forbidden_block(c, 2, &out), BC_OK);
  EXPECT_EQ(take(out), "100");
  ASSERT_EQ(bc_growth_json("100", &out), BC_OK);
  const std::string growth = take(out);
  const auto at = growth.find("\"rho\": ");
  ASSERT_NE(at, std::string::npos);
  EXPECT_NEAR(std::stod(growth.substr(at + 7)), (1 + std::sqrt(5.0)) / 2, 1e-9);
}

TEST(CApi, GapsStruct) {
  bc_pointset* ps = nullptr;
  ASSERT_EQ(bc_generate(0.6, 5, BC_FORM_PRIMED, &ps), BC_OK);
  bc_gap_report g{};
  ASSERT_EQ(bc_gaps(ps, -1.0, &g), BC_OK);
  EXPECT_TRUE(g.ejk_applicable);
  EXPECT_TRUE(g.ejk_prediction_match);
  EXPECT_NEAR(g.max_gap, 0.1296, 1e-14);
  bc_pointset_free(ps);
}

TEST(CApi, SweepsSerialise) {
  const double s[] = {0.5, 1.0};
  bc_sweep_config cfg{0.51, 0.66, 8, s, 2, 4, 0, 0, BC_FORM_STANDARD, 2, 0, 0};
  char* out = nullptr;
  ASSERT_EQ(bc_sweep_average_json(&cfg, &out), BC_OK);
  EXPECT_NE(take(out).find("\"per_s\""), std::string::npos);
  std::vector<double> lambdas(4);
  ASSERT_EQ(bc_sample_lambdas(0.51, 0.66, 4, 1, 7, lambdas.data()), BC_OK);
  ASSERT_EQ(bc_min_gap_scan_json(lambdas.data(), 4, 5, 8, 1.0, 3.0, 1.1, 1, &out), BC_OK);
  bc_string_free(out);
  const double rho[] = {0.01};
  ASSERT_EQ(bc_transversality_json(8, 3, 1, rho, 1, 0.5, 0.668, 1, &out), BC_OK);
  bc_string_free(out);
  ASSERT_EQ(bc_attract_json(0.6, 0.63, 0, 0.5, 20, &out), BC_OK);
  bc_string_free(out);
  EXPECT_EQ(bc_attract_json(0.6, 0.63, 9, 0.5, 20, &out), BC_ERR_RESOURCE);
}

TEST(CApi, BinaryFileRoundTrip) {
  bc_pointset* ps = nullptr;
  ASSERT_EQ(bc_generate(0.63, 10, BC_FORM_STANDARD, &ps), BC_OK);
  const std::string path = ::testing::TempDir() + "capi_points.bin";
  ASSERT_EQ(bc_pointset_write_binary(ps, path.c_str()), BC_OK);
  bc_pointset* back = nullptr;
  ASSERT_EQ(bc_pointset_read_binary(path.c_str(), &back), BC_OK);
  ASSERT_EQ(bc_pointset_size(back), bc_pointset_size(ps));
  for (std::size_t i = 0; i < bc_pointset_size(ps); ++i) EXPECT_EQ(bc_pointset_values(back)[i], bc_pointset_values(ps)[i]);
  EXPECT_EQ(bc_pointset_read_binary("/nonexistent/x.bin", &back), BC_ERR_USAGE);
  std::remove(path.c_str());
  bc_pointset_free(back);
  bc_pointset_free(ps);
}
