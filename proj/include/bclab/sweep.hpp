// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bclab/pointset.hpp"
#include "bclab/stats.hpp"

namespace bclab {

enum class Quadrature { MonteCarlo, Midpoint };

const char* quadrature_name(Quadrature q) noexcept;

/// Transversality interval used by the min-gap and sublevel-set checks.
inline constexpr double kTransversalityLo = 0.5;
inline constexpr double kTransversalityHi = 0.668;

struct SweepConfig {
  double lambda_lo = 0.51;
  double lambda_hi = 0.66;
  unsigned levels = 14;
  std::vector<double> s_grid{0.5, 1.0, 2.0, 4.0};
  std::size_t sample_count = 64;
  Quadrature quadrature = Quadrature::Midpoint;
  std::uint64_t seed = 0;
  Form form = Form::Standard;
  unsigned workers = 1;
  bool keep_curves = false;
  bool progress = false;  // progress lines on stderr
};

/// lambda_lo <= lambda_hi < 1, lambda_lo >= 1/2, sample_count >= 2. A
/// degenerate interval (lo == hi) samples one parameter repeatedly.
void validate(const SweepConfig& cfg);

/// Parameter samples: midpoints of sample_count equal cells, or seeded
/// uniform draws. Drawn sequentially so the list is independent of workers.
std::vector<double> sample_lambdas(double lo, double hi, std::size_t count, Quadrature q,
                                   std::uint64_t seed);

struct PerS {
  double s = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<double> lambdas;
  std::vector<PerS> per_s;
  double c_hat = 0.0;  // min over s > 0 of mean(s) / s
  double C_hat = 0.0;  // max over s > 0 of mean(s) / s
  std::vector<std::vector<double>> curves;  // per-lambda R2 values, if kept
};

/// Mean of R2(s, lambda, 2^N) over the parameter samples, i.e. the
/// integral over I divided by |I|.
SweepReport averaged_pair_correlation(const SweepConfig& cfg);

/// Runs fn(i) for i in [0, count) on `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------

struct MinGapConfig {
  std::vector<double> lambdas;
  unsigned n_min = 10;
  unsigned n_max = 18;
  std::function<double(unsigned)> alpha;
  unsigned workers = 1;
};

/// alpha_N = coef * base^-N * N^-power.
std::function<double(unsigned)> alpha_power_law(double coef, double base, double power);

struct MinGapRow {
  double lambda = 0.0;
  std::vector<double> min_gaps;          // g_N for N = n_min..n_max
  std::vector<unsigned> exceedances;     // N with g_N > alpha_N
};

struct MinGapReport {
  unsigned n_min = 0;
  unsigned n_max = 0;
  std::vector<double> alpha;             // alpha_N for N = n_min..n_max
  std::vector<MinGapRow> rows;
  std::vector<std::string> warnings;
};

MinGapReport min_gap_scan(const MinGapConfig& cfg);

// ---------------------------------------------------------------------------

struct TransversalityConfig {
  unsigned degree = 30;
  std::size_t poly_samples = 100;
  std::uint64_t seed = 0;
  std::vector<double> rho_grid{1e-2, 1e-3, 1e-4};
  double lo = kTransversalityLo;
  double hi = kTransversalityHi;
  std::size_t min_grid_points = 100000;
  unsigned workers = 1;
};

/// Random {-1,0,1} polynomial with constant term 1 and exact degree.
std::vector<std::int8_t> random_signed_poly(unsigned degree, std::uint64_t& state);

/// Leb{x in [lo, hi] : |g(x)| <= rho}. Membership is sampled on a grid of step
/// at most rho / 100 with at least min_points cells; each boundary crossing is
/// then located by bisection.
double measure_sublevel(std::span<const std::int8_t> coeffs, double lo, double hi, double rho,
                        std::size_t min_points = 100000);

struct TransversalityReport {
  TransversalityConfig config;
  std::vector<std::vector<std::int8_t>> polys;
  std::vector<std::vector<double>> ratios;  // ratios[poly][rho index] = measure / rho
  std::vector<double> max_ratio;            // per rho: empirical constant C
};

TransversalityReport transversality_check(const TransversalityConfig& cfg);

// ---------------------------------------------------------------------------

struct AttractCertificate {
  unsigned stage = 0;
  double zero = 0.0;             // lambda_k, a zero of a {0,+-1} polynomial
  std::string poly;              // that polynomial, ascending
  unsigned levels = 0;           // N_k
  double s = 0.0;                // s_k = 2^-k
  double threshold = 0.0;        // 2^(N_k^(1 - epsilon))
  double r2_exact_lower = 0.0;   // coincidence rate modulo the polynomial
  double r2_float = 0.0;         // float R2(s_k, lambda_k, 2^N_k)
  Interval interval;             // I_k after shrinking
};

struct AttractConfig {
  double lo = 0.6;
  double hi = 0.63;
  unsigned depth = 1;
  double epsilon = 0.5;
  unsigned n_cap = 20;
};

inline constexpr unsigned kMaxAttractDepth = 4;

struct AttractingParameter {
  double lambda = 0.0;
  Interval interval;
  std::vector<AttractCertificate> certificates;
  unsigned depth_reached = 0;
  bool complete = false;
  std::string note;
};

/// Finite-depth nested-interval construction of a parameter whose pair
/// correlation is large at scales s_k = 2^-k for levels N_1 < N_2 < ...
AttractingParameter construct_attracting_parameter(const AttractConfig& cfg);

}  // namespace bclab
