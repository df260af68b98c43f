// SPDX-License-Identifier: Apache-2.0
#include "bclab/pointset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bclab/error.hpp"

namespace bclab {

PointSet::PointSet(double lambda, unsigned levels, Form form, std::vector<double> values)
    : lambda_(lambda), levels_(levels), form_(form), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << levels_)) {
    throw UsageError("point set must hold exactly 2^N values");
  }
}

double PointSet::support_max() const noexcept {
  const double top = 1.0 - std::pow(lambda_, static_cast<double>(levels_));
  return form_ == Form::Standard ? top : top / (1.0 - lambda_);
}

namespace {

void check_parameters(double lambda, unsigned levels) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("lambda must lie in (0, 1), got " + std::to_string(lambda));
  }
  if (levels < 1 || levels > kMaxFloatLevels) {
    throw ResourceError("N must lie in [1, " + std::to_string(kMaxFloatLevels) + "], got " +
                        std::to_string(levels));
  }
}

// One doubling step: cur holds the sorted set A of size m; out receives the
// sorted union (with multiplicity) of lambda*A and lambda*A + 1.
void merge_step(std::vector<double>& cur, std::vector<double>& out, double lambda) {
  const std::size_t m = cur.size();
  for (double& v : cur) v *= lambda;
  out.resize(2 * m);
  std::size_t i = 0, j = 0, k = 0;
  double hi = cur[0] + 1.0;
  while (i < m && j < m) {
    if (cur[i] <= hi) {
      out[k++] = cur[i++];
    } else {
      out[k++] = hi;
      if (++j < m) hi = cur[j] + 1.0;
    }
  }
  while (i < m) out[k++] = cur[i++];
  while (j < m) out[k++] = cur[j++] + 1.0;
}

}  // namespace

PointSet generate(double lambda, unsigned levels, Form form) {
  check_parameters(lambda, levels);
  const std::size_t count = std::size_t{1} << levels;
  std::vector<double> cur;
  std::vector<double> next;
  cur.reserve(count);
  next.reserve(count);
  cur.push_back(0.0);
  for (unsigned step = 0; step < levels; ++step) {
    merge_step(cur, next, lambda);
    std::swap(cur, next);
  }
  if (form == Form::Standard) {
    const double scale = 1.0 - lambda;
    for (double& v : cur) v *= scale;
  }
  return PointSet(lambda, levels, form, std::move(cur));
}

PointSet to_standard(const PointSet& primed) {
  if (primed.form() == Form::Standard) return primed;
  const double scale = 1.0 - primed.lambda();
  std::vector<double> values(primed.values().begin(), primed.values().end());
  for (double& v : values) v *= scale;
  return PointSet(primed.lambda(), primed.levels(), Form::Standard, std::move(values));
}

}  // namespace bclab
