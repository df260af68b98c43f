// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bclab/io.hpp"
#include "bclab/polynomial.hpp"

namespace bclab {

/// Exact-backend summary for an algebraic parameter given by its minimal
/// polynomial: distinct counts, coincidence rate, classification of the
/// polynomial and of its reversal, and, when
/// the polynomial is itself a {0,+-1} relation, the per-level comparison of
/// distinct counts with words avoiding the derived forbidden block.
io::json exact_report(const IntPoly& minpoly, unsigned levels);

}  // namespace bclab
