// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bclab/algebraic.hpp"
#include "bclab/exact.hpp"
#include "bclab/pointset.hpp"
#include "bclab/stats.hpp"
#include "bclab/sweep.hpp"

namespace bclab::io {

using nlohmann::json;

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double v);

// Binary dump: "BCV1", lambda (f64 LE), N (u32 LE), form (u8), then 2^N f64 LE.
inline constexpr char kMagic[4] = {'B', 'C', 'V', '1'};
inline constexpr std::size_t kHeaderBytes = 17;

void write_binary(const PointSet& ps, std::ostream& out);
PointSet read_binary(std::istream& in);

/// One value per line.
void write_csv(const PointSet& ps, std::ostream& out);

/// bin_left,bin_right,count,overlay
std::string histogram_csv(const Histogram& h);

/// s,r2
std::string correlation_csv(const CorrelationCurve& c);

/// Polynomial from a constant-first JSON coefficient array.
IntPoly poly_from_json(const json& j);
json poly_to_json(const IntPoly& p);

json to_json(const GapReport& r);
json to_json(const GofStatistics& g);
json to_json(const GrowthReport& r);
json to_json(const AlgebraicClass& c);
json to_json(const GreedyExpansion& g);
json to_json(const NearbyZero& z);
json to_json(const SweepReport& r);
json to_json(const MinGapReport& r);
json to_json(const TransversalityReport& r);
json to_json(const AttractingParameter& a);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

}  // namespace bclab::io
