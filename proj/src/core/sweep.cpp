// SPDX-License-Identifier: Apache-2.0
#include "bclab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "bclab/algebraic.hpp"
#include "bclab/error.hpp"
#include "bclab/exact.hpp"

namespace bclab {

const char* quadrature_name(Quadrature q) noexcept {
  return q == Quadrature::MonteCarlo ? "monte-carlo" : "midpoint";
}

void validate(const SweepConfig& cfg) {
  if (!(cfg.lambda_lo >= 0.5 && cfg.lambda_lo <= cfg.lambda_hi && cfg.lambda_hi < 1.0)) {
    throw DomainError("sweep interval must satisfy 1/2 <= lo <= hi < 1");
  }
  if (cfg.sample_count < 2) throw UsageError("sweep needs at least 2 samples");
  if (cfg.s_grid.empty()) throw UsageError("sweep s-grid is empty");
  if (cfg.workers < 1) throw UsageError("worker count must be at least 1");
}

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

std::vector<double> sample_lambdas(double lo, double hi, std::size_t count, Quadrature q,
                                   std::uint64_t seed) {
  std::vector<double> out(count);
  const double width = hi - lo;
  if (q == Quadrature::Midpoint) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = lo + (static_cast<double>(i) + 0.5) * width / static_cast<double>(count);
    }
  } else {
    std::mt19937_64 rng(seed);
    for (auto& v : out) v = lo + unit_draw(rng) * width;
  }
  return out;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = std::min<std::size_t>(workers, count);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

SweepReport averaged_pair_correlation(const SweepConfig& cfg) {
  validate(cfg);
  if (!(cfg.lambda_lo > 0.5)) throw DomainError("averaged pair correlation needs an interval inside (1/2, 1)");
  if (!std::is_sorted(cfg.s_grid.begin(), cfg.s_grid.end()) || cfg.s_grid.front() < 0.0) {
    throw UsageError("s-grid must be ascending and nonnegative");
  }
  SweepReport rep;
  rep.config = cfg;
  rep.lambdas = sample_lambdas(cfg.lambda_lo, cfg.lambda_hi, cfg.sample_count, cfg.quadrature, cfg.seed);

  std::vector<std::vector<double>> curves(rep.lambdas.size());
  std::atomic<std::size_t> done{0};
  parallel_for(rep.lambdas.size(), cfg.workers, [&](std::size_t i) {
    const PointSet ps = generate(rep.lambdas[i], cfg.levels, cfg.form);
    curves[i] = pair_correlation(ps, cfg.s_grid).r_values;
    const std::size_t finished = ++done;
    if (cfg.progress && (finished % 16 == 0 || finished == rep.lambdas.size())) {
      std::fprintf(stderr, "sweep: %zu/%zu parameters\n", finished, rep.lambdas.size());
    }
  });

  // Reduction in sample order keeps the sums independent of scheduling.
  const std::size_t ns = cfg.s_grid.size();
  rep.per_s.resize(ns);
  for (std::size_t j = 0; j < ns; ++j) {
    PerS& p = rep.per_s[j];
    p.s = cfg.s_grid[j];
    p.min = std::numeric_limits<double>::infinity();
    p.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& c : curves) {
      sum += c[j];
      p.min = std::min(p.min, c[j]);
      p.max = std::max(p.max, c[j]);
    }
    p.mean = sum / static_cast<double>(curves.size());
  }
  bool first = true;
  for (const auto& p : rep.per_s) {
    if (p.s <= 0.0) continue;
    const double slope = p.mean / p.s;
    rep.c_hat = first ? slope : std::min(rep.c_hat, slope);
    rep.C_hat = first ? slope : std::max(rep.C_hat, slope);
    first = false;
  }
  if (cfg.keep_curves) rep.curves = std::move(curves);
  return rep;
}

// ---------------------------------------------------------------------------
// Min-gap scan

std::function<double(unsigned)> alpha_power_law(double coef, double base, double power) {
  return [=](unsigned n) {
    const double nd = static_cast<double>(n);
    return coef * std::pow(base, -nd) * std::pow(nd, -power);
  };
}

MinGapReport min_gap_scan(const MinGapConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) throw UsageError("min-gap scan needs 1 <= n_min <= n_max");
  if (cfg.n_max > kMaxFloatLevels) throw ResourceError("min-gap scan N exceeds the float cap");
  if (cfg.lambdas.empty()) throw UsageError("min-gap scan needs at least one parameter");
  if (!cfg.alpha) throw UsageError("min-gap scan needs an alpha sequence");

  MinGapReport rep;
  rep.n_min = cfg.n_min;
  rep.n_max = cfg.n_max;
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) rep.alpha.push_back(cfg.alpha(n));
  for (double lam : cfg.lambdas) {
    if (!(lam > 0.0 && lam < 1.0)) throw DomainError("min-gap scan parameters must lie in (0, 1)");
    if (lam < kTransversalityLo || lam > kTransversalityHi) {
      rep.warnings.push_back("lambda = " + std::to_string(lam) + " lies outside the transversality interval [0.5, 0.668]");
    }
  }
  rep.rows.resize(cfg.lambdas.size());
  parallel_for(cfg.lambdas.size(), cfg.workers, [&](std::size_t i) {
    MinGapRow& row = rep.rows[i];
    row.lambda = cfg.lambdas[i];
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
      const GapReport g = gaps(generate(row.lambda, n, Form::Primed));
      row.min_gaps.push_back(g.min_gap);
      if (g.min_gap > rep.alpha[n - cfg.n_min]) row.exceedances.push_back(n);
    }
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Transversality

std::vector<std::int8_t> random_signed_poly(unsigned degree, std::uint64_t& state) {
  std::mt19937_64 rng(state);
  std::vector<std::int8_t> c(degree + 1, 0);
  c[0] = 1;
  for (unsigned n = 1; n < degree; ++n) c[n] = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
  if (degree >= 1) c[degree] = (rng() & 1) ? 1 : -1;
  state = rng();
  return c;
}

double measure_sublevel(std::span<const std::int8_t> coeffs, double lo, double hi, double rho,
                        std::size_t min_points) {
  if (!(hi > lo) || !(rho > 0.0)) throw UsageError("sublevel measurement needs lo < hi and rho > 0");
  const double width = hi - lo;
  const auto by_step = static_cast<std::size_t>(std::ceil(width / (rho / 100.0)));
  const std::size_t cells = std::max(min_points, by_step);
  const double step = width / static_cast<double>(cells);
  auto inside = [&](double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return std::abs(acc) <= rho;
  };
  // Boundary between nodes a and b where membership flips, to double precision.
  auto boundary = [&](double a, double b, bool a_inside) {
    for (int it = 0; it < 64 && b - a > 0.0; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      (inside(m) == a_inside ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  double measure = 0.0, entered = lo;
  bool prev = inside(lo);
  double prev_x = lo;
  for (std::size_t i = 1; i <= cells; ++i) {
    const double x = i == cells ? hi : lo + static_cast<double>(i) * step;
    const bool cur = inside(x);
    if (cur != prev) {
      const double edge = boundary(prev_x, x, prev);
      if (cur) {
        entered = edge;
      } else {
        measure += edge - entered;
      }
    }
    prev = cur;
    prev_x = x;
  }
  if (prev) measure += hi - entered;
  return measure;
}

TransversalityReport transversality_check(const TransversalityConfig& cfg) {
  if (!(cfg.lo >= kTransversalityLo && cfg.hi <= kTransversalityHi && cfg.lo < cfg.hi)) {
    throw DomainError("transversality check needs I inside [0.5, 0.668]");
  }
  if (cfg.degree < 1) throw UsageError("polynomial degree must be at least 1");
  TransversalityReport rep;
  rep.config = cfg;
  std::uint64_t state = cfg.seed;
  for (std::size_t i = 0; i < cfg.poly_samples; ++i) rep.polys.push_back(random_signed_poly(cfg.degree, state));
  rep.ratios.assign(rep.polys.size(), std::vector<double>(cfg.rho_grid.size(), 0.0));
  parallel_for(rep.polys.size(), cfg.workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < cfg.rho_grid.size(); ++j) {
      const double rho = cfg.rho_grid[j];
      rep.ratios[i][j] = measure_sublevel(rep.polys[i], cfg.lo, cfg.hi, rho, cfg.min_grid_points) / rho;
    }
  });
  rep.max_ratio.assign(cfg.rho_grid.size(), 0.0);
  for (const auto& row : rep.ratios) {
    for (std::size_t j = 0; j < row.size(); ++j) rep.max_ratio[j] = std::max(rep.max_ratio[j], row[j]);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Attracting parameters

AttractingParameter construct_attracting_parameter(const AttractConfig& cfg) {
  if (!(cfg.lo > 0.5 && cfg.lo < cfg.hi && cfg.hi < 1.0)) {
    throw DomainError("attracting-parameter construction needs I inside (1/2, 1)");
  }
  if (cfg.depth > kMaxAttractDepth) {
    throw ResourceError("construction depth is capped at " + std::to_string(kMaxAttractDepth));
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (cfg.n_cap > kMaxExactLevels) throw ResourceError("certificate level cap exceeds the exact backend cap");

  AttractingParameter out;
  Interval cur{cfg.lo, cfg.hi};
  unsigned prev_levels = 0;
  for (unsigned stage = 1; stage <= cfg.depth; ++stage) {
    const double mid = 0.5 * (cur.lo + cur.hi);
    const double half = 0.5 * (cur.hi - cur.lo);
    // Smallest k >= stage with mid^k < half keeps the zero inside I_k.
    unsigned k = stage;
    while (std::pow(mid, static_cast<double>(k)) >= half && k < 200) ++k;
    if (std::pow(mid, static_cast<double>(k)) >= half) {
      out.note = "interval too narrow for a greedy zero at stage " + std::to_string(stage);
      break;
    }
    const NearbyZero zero = nearest_zero_above(mid, k);
    const IntPoly poly = zero.poly.to_int_poly();
    const double s = std::ldexp(1.0, -static_cast<int>(stage));

    bool found = false;
    for (unsigned n = prev_levels + 1; n <= cfg.n_cap; ++n) {
      const double threshold = std::exp2(std::pow(static_cast<double>(n), 1.0 - cfg.epsilon));
      const double exact = coincidence_rate(generate_exact(poly, n));
      if (exact < threshold) continue;
      AttractCertificate cert;
      cert.stage = stage;
      cert.zero = zero.root;
      cert.poly = poly.to_string(true);
      cert.levels = n;
      cert.s = s;
      cert.threshold = threshold;
      cert.r2_exact_lower = exact;
      const std::vector<double> grid{s};
      cert.r2_float = pair_correlation(generate(zero.root, n, Form::Standard), grid).r_values[0];
      // Points of A_N move with speed at most 2 / (1 - lambda) in lambda, so
      // pairs coincident at the zero stay within s 2^-N on this neighbourhood.
      const double delta = s * std::ldexp(1.0, -static_cast<int>(n)) * (1.0 - cur.hi) / 4.0;
      cur = Interval{std::max(cur.lo, zero.root - delta), std::min(cur.hi, zero.root + delta)};
      cert.interval = cur;
      out.certificates.push_back(cert);
      prev_levels = n;
      found = true;
      break;
    }
    if (!found) {
      out.note = "no certificate level up to N = " + std::to_string(cfg.n_cap) + " at stage " +
                 std::to_string(stage) + " (zero of " + poly.to_string(true) + ")";
      break;
    }
    out.depth_reached = stage;
  }
  out.complete = out.depth_reached == cfg.depth;
  out.interval = cur;
  out.lambda = 0.5 * (cur.lo + cur.hi);
  return out;
}

}  // namespace bclab
