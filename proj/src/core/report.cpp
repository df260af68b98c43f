// SPDX-License-Identifier: Apache-2.0
#include "bclab/report.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "bclab/algebraic.hpp"
#include "bclab/exact.hpp"
#include "bclab/stats.hpp"

namespace bclab {

io::json exact_report(const IntPoly& minpoly, unsigned levels) {
  const ExactPointSet eps = generate_exact(minpoly, levels);
  const double r0 = coincidence_rate(eps);
  io::json j{{"minpoly", minpoly.to_string()},
             {"coefficients", io::poly_to_json(minpoly)},
             {"N", levels},
             {"point_count", eps.total_multiplicity()},
             {"distinct_count", eps.distinct_count()},
             {"coincidence_rate", r0},
             {"sum_squared_multiplicities", std::ldexp(r0 + 1.0, static_cast<int>(levels))}};
  j["classification"] = io::to_json(classify(minpoly));
  // x^d p(1/x) has the reciprocal roots; with lambda0 < 1 this is where a
  // Pisot or Garsia 1/lambda0 shows up.
  if (minpoly.constant() != 0) {
    std::vector<std::int64_t> rev(minpoly.coeffs().rbegin(), minpoly.coeffs().rend());
    j["reversed_classification"] = io::to_json(classify(IntPoly(std::move(rev))));
  } else {
    j["reversed_classification"] = nullptr;
  }

  const auto relation = signed_relation(minpoly);
  if (!relation) {
    j["growth"] = nullptr;
    j["growth_note"] = "minimal polynomial is not a {0,+-1} relation with constant term +-1; growth comparison omitted";
    return j;
  }
  const std::string block = forbidden_block(*relation);
  const GrowthReport growth = sft_growth_rate(block);
  io::json levels_json = io::json::array();
  bool bound_holds = true;
  bool equal = true;
  for (unsigned n = 1; n <= levels; ++n) {
    const std::size_t distinct = n == levels ? eps.distinct_count() : generate_exact(minpoly, n).distinct_count();
    const auto words = n <= growth.word_counts.size() ? growth.word_counts[n - 1] : 0;
    bound_holds = bound_holds && distinct <= words;
    equal = equal && distinct == words;
    levels_json.push_back({{"N", n}, {"distinct_count", distinct}, {"word_count", words}});
  }
  j["growth"] = io::to_json(growth);
  j["growth"]["replacement_block"] = replacement_block(*relation);
  j["growth"]["levels"] = levels_json;
  j["growth"]["bound_holds"] = bound_holds;
  j["growth"]["counts_equal"] = equal;
  return j;
}

}  // namespace bclab
