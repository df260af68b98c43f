// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "bclab/error.hpp"
#include "bclab/io.hpp"
#include "bclab/report.hpp"

using namespace bclab;

TEST(Binary, RoundTripsBitExact) {
  for (Form f : {Form::Standard, Form::Primed}) {
    const auto ps = generate(0.6180339887, 12, f);
    std::stringstream buf;
    io::write_binary(ps, buf);
    EXPECT_EQ(buf.str().size(), io::kHeaderBytes + 8 * ps.size());
    const auto back = io::read_binary(buf);
    EXPECT_EQ(back.lambda(), ps.lambda());
    EXPECT_EQ(back.levels(), ps.levels());
    EXPECT_EQ(back.form(), ps.form());
    EXPECT_EQ(0, std::memcmp(back.values().data(), ps.values().data(), 8 * ps.size()));
  }
}

TEST(Binary, HeaderLayout) {
  std::stringstream buf;
  io::write_binary(generate(0.5, 1, Form::Primed), buf);
  const std::string s = buf.str();
  EXPECT_EQ(s.substr(0, 4), "BCV1");
  // 0.5 = 0x3FE0000000000000 little-endian.
  EXPECT_EQ(static_cast<unsigned char>(s[10]), 0xE0);
  EXPECT_EQ(static_cast<unsigned char>(s[11]), 0x3F);
  EXPECT_EQ(s[12], 1);
  EXPECT_EQ(s[16], 1);
}

TEST(Binary, RejectsBadInput) {
  std::stringstream bad("XXXX");
  EXPECT_THROW(io::read_binary(bad), UsageError);
  std::stringstream buf;
  io::write_binary(generate(0.6, 4, Form::Standard), buf);
  std::stringstream truncated(buf.str().substr(0, buf.str().size() - 3));
  EXPECT_THROW(io::read_binary(truncated), UsageError);
}

TEST(Csv, SeventeenDigits) {
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::format_real(1.0 / 3.0)), 1.0 / 3.0);
  CorrelationCurve c;
  c.s_grid = {2.5};
  c.r_values = {3.625};
  EXPECT_EQ(io::correlation_csv(c), "s,r2\n2.5,3.625\n");
}

TEST(Csv, HistogramRows) {
  const auto h = histogram(spacings(generate(0.5, 8, Form::Standard), 1));
  const std::string csv = io::histogram_csv(h);
  EXPECT_EQ(csv.rfind("bin_left,bin_right,count,overlay\n", 0), 0U);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
  EXPECT_NE(csv.find("\n1,1.1000000000000001,255,"), std::string::npos);
}

TEST(Json, PolynomialRoundTrip) {
  const auto p = IntPoly::parse("x^3-2x-2");
  EXPECT_EQ(io::poly_from_json(io::poly_to_json(p)), p);
  EXPECT_THROW(io::poly_from_json(io::json::parse("[1.5, 2]")), UsageError);
  EXPECT_THROW(io::poly_from_json(io::json::parse("{}")), UsageError);
}

TEST(Json, GapReportFields) {
  const auto j = io::to_json(gaps(generate(0.6, 5, Form::Primed)));
  EXPECT_TRUE(j.at("ejk_prediction_match").get<bool>());
  EXPECT_NEAR(j.at("max_gap").get<double>(), 0.1296, 1e-14);
}

TEST(Json, SweepReportEchoesConfig) {
  SweepConfig cfg;
  cfg.levels = 8;
  cfg.sample_count = 4;
  cfg.seed = 17;
  const auto j = io::to_json(averaged_pair_correlation(cfg));
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 17U);
  EXPECT_EQ(j.at("per_s").size(), 4U);
  EXPECT_TRUE(j.contains("c_hat"));
  EXPECT_TRUE(j.contains("C_hat"));
  EXPECT_EQ(j.at("config").at("N").get<unsigned>(), 8U);
}

TEST(Json, DumpIsDeterministic) {
  SweepConfig cfg;
  cfg.levels = 8;
  cfg.sample_count = 4;
  EXPECT_EQ(io::dump(io::to_json(averaged_pair_correlation(cfg))), io::dump(io::to_json(averaged_pair_correlation(cfg))));
}

TEST(Report, GoldenGrowthComparison) {
  const auto j = exact_report(IntPoly::parse("x^2+x-1"), 12);
  EXPECT_EQ(j.at("growth").at("forbidden_block"), "100");
  EXPECT_TRUE(j.at("growth").at("counts_equal").get<bool>());
  EXPECT_EQ(j.at("reversed_classification").at("verdict"), "Pisot");
  EXPECT_EQ(j.at("point_count").get<std::uint64_t>(), 4096U);
}

TEST(Report, GarsiaHasNoGrowthSection) {
  const auto j = exact_report(IntPoly::parse("x^2-2"), 12);
  EXPECT_EQ(j.at("distinct_count").get<std::size_t>(), 4096U);
  EXPECT_EQ(j.at("coincidence_rate").get<double>(), 0.0);
  EXPECT_TRUE(j.at("growth").is_null());
  EXPECT_TRUE(j.contains("growth_note"));
  const auto k = exact_report(IntPoly::parse("x^3-2x-2"), 10);
  EXPECT_EQ(k.at("classification").at("verdict"), "Garsia");
  EXPECT_NEAR(k.at("classification").at("reciprocal").get<double>(), 0.5652, 1e-4);
}
