// SPDX-License-Identifier: Apache-2.0
#include "bclab/io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "bclab/error.hpp"

namespace bclab::io {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

template <class U>
void put_le(std::ostream& out, U bits) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw UsageError("truncated point-set dump");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return bits;
}

const char* form_name(Form f) { return f == Form::Standard ? "standard" : "primed"; }

}  // namespace

void write_binary(const PointSet& ps, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put_le(out, std::bit_cast<std::uint64_t>(ps.lambda()));
  put_le(out, static_cast<std::uint32_t>(ps.levels()));
  put_le(out, static_cast<std::uint8_t>(ps.form()));
  for (double v : ps.values()) put_le(out, std::bit_cast<std::uint64_t>(v));
}

PointSet read_binary(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw UsageError("not a BCV1 point-set dump");
  const double lambda = std::bit_cast<double>(get_le<std::uint64_t>(in));
  const auto levels = get_le<std::uint32_t>(in);
  const auto form = get_le<std::uint8_t>(in);
  if (form > 1) throw UsageError("unknown point-set form byte");
  if (levels < 1 || levels > kMaxFloatLevels) throw ResourceError("dump level count out of range");
  std::vector<double> values(std::size_t{1} << levels);
  for (double& v : values) v = std::bit_cast<double>(get_le<std::uint64_t>(in));
  return PointSet(lambda, levels, static_cast<Form>(form), std::move(values));
}

void write_csv(const PointSet& ps, std::ostream& out) {
  for (double v : ps.values()) out << format_real(v) << '\n';
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_left,bin_right,count,overlay\n";
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    out << format_real(h.bin_left(i)) << ',' << format_real(h.bin_right(i)) << ',' << h.counts[i] << ','
        << format_real(h.overlay[i]) << '\n';
  }
  return out.str();
}

std::string correlation_csv(const CorrelationCurve& c) {
  std::ostringstream out;
  out << "s,r2\n";
  for (std::size_t i = 0; i < c.s_grid.size(); ++i) {
    out << format_real(c.s_grid[i]) << ',' << format_real(c.r_values[i]) << '\n';
  }
  return out.str();
}

IntPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("polynomial JSON must be a constant-first coefficient array");
  std::vector<std::int64_t> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw UsageError("polynomial coefficients must be integers");
    c.push_back(v.get<std::int64_t>());
  }
  return IntPoly(std::move(c));
}

json poly_to_json(const IntPoly& p) { return json(p.coeffs()); }

json to_json(const GapReport& r) {
  return json{{"min_gap", r.min_gap},
              {"max_gap", r.max_gap},
              {"max_gap_location", {{"index", r.max_gap_index}, {"left", r.max_gap_left}}},
              {"interior_max_gap", r.interior_max_gap},
              {"interior_max_gap_location",
               {{"index", r.interior_max_gap_index}, {"left", r.interior_max_gap_left}}},
              {"distinct_tol", r.distinct_tol},
              {"ejk_applicable", r.ejk_applicable},
              {"ejk_predicted_left", r.ejk_predicted_left},
              {"ejk_predicted_gap", r.ejk_predicted_gap},
              {"ejk_prediction_match", r.ejk_prediction_match}};
}

json to_json(const GofStatistics& g) {
  return json{{"ks", g.ks}, {"chi2", g.chi2}, {"mean", g.mean}, {"variance", g.variance}, {"samples", g.samples}};
}

json to_json(const GrowthReport& r) {
  return json{{"forbidden_block", r.forbidden_block},
              {"automaton_size", r.automaton_size},
              {"rho", r.rho},
              {"rho_method", r.rho_method},
              {"degenerate", r.degenerate},
              {"ratio_consistent", r.ratio_consistent},
              {"word_counts", r.word_counts}};
}

json to_json(const AlgebraicClass& c) {
  json roots = json::array();
  for (const auto& z : c.roots) {
    roots.push_back({{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}});
  }
  json j{{"poly", c.poly.to_string()},
         {"coefficients", poly_to_json(c.poly)},
         {"verdict", verdict_name(c.verdict)},
         {"roots", roots},
         {"margin", c.margin},
         {"borderline", c.borderline},
         {"max_residual", c.max_residual},
         {"explanation", c.explanation}};
  j["dominant_root"] = c.dominant_root ? json(*c.dominant_root) : json(nullptr);
  j["reciprocal"] = c.reciprocal ? json(*c.reciprocal) : json(nullptr);
  return j;
}

json to_json(const GreedyExpansion& g) {
  return json{{"lambda", g.lambda}, {"k", g.k}, {"digits", g.digits}, {"remainder", g.remainder}};
}

json to_json(const NearbyZero& z) {
  return json{{"poly", z.poly.to_int_poly().to_string(true)},
              {"coefficients", poly_to_json(z.poly.to_int_poly())},
              {"root", z.root}};
}

json to_json(const SweepReport& r) {
  const auto& c = r.config;
  json per_s = json::array();
  for (const auto& p : r.per_s) per_s.push_back({{"s", p.s}, {"mean", p.mean}, {"min", p.min}, {"max", p.max}});
  json j{{"config",
          {{"interval", {c.lambda_lo, c.lambda_hi}},
           {"N", c.levels},
           {"s_grid", c.s_grid},
           {"sample_count", c.sample_count},
           {"quadrature", quadrature_name(c.quadrature)},
           {"form", form_name(c.form)}}},
         {"seed", c.seed},
         {"lambdas", r.lambdas},
         {"per_s", per_s},
         {"c_hat", r.c_hat},
         {"C_hat", r.C_hat}};
  if (!r.curves.empty()) j["curves"] = r.curves;
  return j;
}

json to_json(const MinGapReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"lambda", row.lambda}, {"min_gaps", row.min_gaps}, {"exceedances", row.exceedances}});
  }
  return json{{"n_min", r.n_min}, {"n_max", r.n_max}, {"alpha", r.alpha}, {"rows", rows}, {"warnings", r.warnings}};
}

json to_json(const TransversalityReport& r) {
  json polys = json::array();
  for (const auto& p : r.polys) polys.push_back(std::vector<int>(p.begin(), p.end()));
  return json{{"degree", r.config.degree},
              {"seed", r.config.seed},
              {"interval", {r.config.lo, r.config.hi}},
              {"rho_grid", r.config.rho_grid},
              {"max_ratio", r.max_ratio},
              {"ratios", r.ratios},
              {"polys", polys}};
}

json to_json(const AttractingParameter& a) {
  json certs = json::array();
  for (const auto& c : a.certificates) {
    certs.push_back({{"stage", c.stage},
                     {"zero", c.zero},
                     {"poly", c.poly},
                     {"N", c.levels},
                     {"s", c.s},
                     {"threshold", c.threshold},
                     {"r2_exact_lower", c.r2_exact_lower},
                     {"r2_float", c.r2_float},
                     {"interval", {c.interval.lo, c.interval.hi}}});
  }
  return json{{"lambda", a.lambda},
              {"interval", {a.interval.lo, a.interval.hi}},
              {"depth_reached", a.depth_reached},
              {"complete", a.complete},
              {"note", a.note},
              {"certificates", certs}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bclab::io
