// SPDX-License-Identifier: Apache-2.0
#include "bclab/bclab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bclab/algebraic.hpp"
#include "bclab/error.hpp"
#include "bclab/exact.hpp"
#include "bclab/io.hpp"
#include "bclab/pointset.hpp"
#include "bclab/report.hpp"
#include "bclab/stats.hpp"
#include "bclab/sweep.hpp"

struct bc_pointset {
  bclab::PointSet ps;
};
struct bc_exact {
  bclab::ExactPointSet eps;
};
struct bc_cdf {
  bclab::CdfModel model;
};
struct bc_sequence {
  bclab::RescaledSequence seq;
};
struct bc_spacings {
  bclab::SpacingSet sp;
};
struct bc_histogram {
  bclab::Histogram h;
};

namespace {

thread_local std::string g_last_error;

bc_status fail(bc_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class Fn>
bc_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return BC_OK;
  } catch (const bclab::Error& e) {
    return fail(static_cast<bc_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BC_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(BC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BC_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw bclab::UsageError(std::string("null argument: ") + name);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  require(out, "out");
  *out = dup_string(s);
}

bclab::Form to_form(bc_form f) {
  switch (f) {
    case BC_FORM_STANDARD: return bclab::Form::Standard;
    case BC_FORM_PRIMED: return bclab::Form::Primed;
  }
  throw bclab::UsageError("unknown form");
}

// Accepts "x^2+x-1" or a constant-first JSON array.
bclab::IntPoly parse_poly(const char* text) {
  require(text, "minpoly");
  std::string s(text);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '[') {
    bclab::io::json j;
    try {
      j = bclab::io::json::parse(s);
    } catch (const std::exception& e) {
      throw bclab::UsageError(std::string("bad coefficient array: ") + e.what());
    }
    return bclab::io::poly_from_json(j);
  }
  return bclab::IntPoly::parse(s);
}

std::optional<double> tol_arg(double t) {
  if (t < 0) return std::nullopt;
  return t;
}

bclab::io::json residue_json(const bclab::Residue& r) {
  auto arr = bclab::io::json::array();
  for (const auto& q : r) arr.push_back(q.get_str());
  return arr;
}

}  // namespace

extern "C" {

const char* bc_version(void) { return "1.0.0"; }
const char* bc_last_error(void) { return g_last_error.c_str(); }
void bc_string_free(char* s) { std::free(s); }

// ---- point sets -----------------------------------------------------------

bc_status bc_generate(double lambda, unsigned levels, bc_form form, bc_pointset** out) {
  return guard([&] {
    require(out, "out");
    *out = new bc_pointset{bclab::generate(lambda, levels, to_form(form))};
  });
}

bc_status bc_pointset_to_standard(const bc_pointset* ps, bc_pointset** out) {
  return guard([&] {
    require(ps, "ps");
    require(out, "out");
    *out = new bc_pointset{bclab::to_standard(ps->ps)};
  });
}

void bc_pointset_free(bc_pointset* ps) { delete ps; }
size_t bc_pointset_size(const bc_pointset* ps) { return ps ? ps->ps.size() : 0; }
const double* bc_pointset_values(const bc_pointset* ps) { return ps ? ps->ps.values().data() : nullptr; }
double bc_pointset_lambda(const bc_pointset* ps) { return ps ? ps->ps.lambda() : 0.0; }
unsigned bc_pointset_levels(const bc_pointset* ps) { return ps ? ps->ps.levels() : 0; }
bc_form bc_pointset_form(const bc_pointset* ps) {
  return ps && ps->ps.form() == bclab::Form::Primed ? BC_FORM_PRIMED : BC_FORM_STANDARD;
}
int bc_pointset_outside_range(const bc_pointset* ps) { return ps && ps->ps.outside_interesting_range(); }

bc_status bc_pointset_write_binary(const bc_pointset* ps, const char* path) {
  return guard([&] {
    require(ps, "ps");
    require(path, "path");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw bclab::UsageError(std::string("cannot open for writing: ") + path);
    bclab::io::write_binary(ps->ps, f);
  });
}

bc_status bc_pointset_read_binary(const char* path, bc_pointset** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw bclab::UsageError(std::string("cannot open: ") + path);
    *out = new bc_pointset{bclab::io::read_binary(f)};
  });
}

bc_status bc_pointset_write_csv(const bc_pointset* ps, const char* path) {
  return guard([&] {
    require(ps, "ps");
    require(path, "path");
    std::ofstream f(path);
    if (!f) throw bclab::UsageError(std::string("cannot open for writing: ") + path);
    bclab::io::write_csv(ps->ps, f);
  });
}

// ---- exact ----------------------------------------------------------------

bc_status bc_generate_exact(const char* minpoly, unsigned levels, bc_exact** out) {
  return guard([&] {
    require(out, "out");
    *out = new bc_exact{bclab::generate_exact(parse_poly(minpoly), levels)};
  });
}

void bc_exact_free(bc_exact* eps) { delete eps; }
size_t bc_exact_distinct_count(const bc_exact* eps) { return eps ? eps->eps.distinct_count() : 0; }
uint64_t bc_exact_multiplicity(const bc_exact* eps, size_t i) {
  if (!eps || i >= eps->eps.distinct_count()) return 0;
  return eps->eps.multiplicities()[i];
}
double bc_exact_coincidence_rate(const bc_exact* eps) { return eps ? bclab::coincidence_rate(eps->eps) : 0.0; }

bc_status bc_exact_residue_json(const bc_exact* eps, size_t i, char** out) {
  return guard([&] {
    require(eps, "eps");
    if (i >= eps->eps.distinct_count()) throw bclab::UsageError("residue index out of range");
    emit(out, residue_json(eps->eps.residue(i)).dump());
  });
}

bc_status bc_reduce_mod_minpoly(const uint8_t* digits, size_t count, const char* minpoly, char** out_json) {
  return guard([&] {
    if (count > 0) require(digits, "digits");
    const auto r = bclab::reduce_mod_minpoly(std::span<const std::uint8_t>(digits, count), parse_poly(minpoly));
    emit(out_json, residue_json(r).dump());
  });
}

bc_status bc_exact_report_json(const char* minpoly, unsigned levels, char** out) {
  return guard([&] { emit(out, bclab::io::dump(bclab::exact_report(parse_poly(minpoly), levels))); });
}

// ---- algebraic --------------------------------------------------------------

bc_status bc_classify_json(const char* poly, char** out) {
  return guard([&] { emit(out, bclab::io::dump(bclab::io::to_json(bclab::classify(parse_poly(poly))))); });
}

bc_status bc_greedy_json(double lambda, unsigned k, char** out) {
  return guard([&] {
    auto j = bclab::io::to_json(bclab::greedy_expansion(lambda, k));
    j["nearest_zero"] = bclab::io::to_json(bclab::nearest_zero_above(lambda, k));
    emit(out, bclab::io::dump(j));
  });
}

bc_status bc_nearest_zero(double lambda, unsigned k, double* root, char** poly_out) {
  return guard([&] {
    require(root, "root");
    const auto z = bclab::nearest_zero_above(lambda, k);
    if (poly_out != nullptr) *poly_out = dup_string(z.poly.to_int_poly().to_string(true));
    *root = z.root;
  });
}

bc_status bc_forbidden_block(const int* c, size_t k, char** block_out) {
  return guard([&] {
    if (k > 0) require(c, "c");
    emit(block_out, bclab::forbidden_block(std::span<const int>(c, k)));
  });
}

bc_status bc_growth_json(const char* block, char** out) {
  return guard([&] {
    require(block, "block");
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::sft_growth_rate(block))));
  });
}

// ---- statistics -------------------------------------------------------------

bc_status bc_cdf_sqrt_half(bc_cdf** out) {
  return guard([&] {
    require(out, "out");
    *out = new bc_cdf{bclab::cdf_sqrt_half()};
  });
}

bc_status bc_cdf_empirical(double lambda, unsigned level, size_t knots, bc_cdf** out) {
  return guard([&] {
    require(out, "out");
    *out = new bc_cdf{bclab::cdf_empirical(lambda, level, knots)};
  });
}

double bc_cdf_eval(const bc_cdf* cdf, double x, int* clamped) {
  if (!cdf) return 0.0;
  const auto v = cdf->model.evaluate(x);
  if (clamped) *clamped = v.clamped;
  return v.value;
}

void bc_cdf_free(bc_cdf* cdf) { delete cdf; }

bc_status bc_rescale(const bc_pointset* ps, const bc_cdf* cdf, bc_sequence** out) {
  return guard([&] {
    require(ps, "ps");
    require(cdf, "cdf");
    require(out, "out");
    *out = new bc_sequence{bclab::rescale(ps->ps, cdf->model)};
  });
}

void bc_sequence_free(bc_sequence* seq) { delete seq; }
size_t bc_sequence_size(const bc_sequence* seq) { return seq ? seq->seq.values.size() : 0; }
const double* bc_sequence_values(const bc_sequence* seq) { return seq ? seq->seq.values.data() : nullptr; }
size_t bc_sequence_warning_count(const bc_sequence* seq) { return seq ? seq->seq.warnings.size() : 0; }
const char* bc_sequence_warning(const bc_sequence* seq, size_t i) {
  if (!seq || i >= seq->seq.warnings.size()) return nullptr;
  return seq->seq.warnings[i].c_str();
}

bc_status bc_spacings_pointset(const bc_pointset* ps, unsigned ell, bc_spacings** out) {
  return guard([&] {
    require(ps, "ps");
    require(out, "out");
    *out = new bc_spacings{bclab::spacings(ps->ps, ell)};
  });
}

bc_status bc_spacings_sequence(const bc_sequence* seq, unsigned ell, bc_spacings** out) {
  return guard([&] {
    require(seq, "seq");
    require(out, "out");
    *out = new bc_spacings{bclab::spacings(seq->seq, ell)};
  });
}

void bc_spacings_free(bc_spacings* sp) { delete sp; }
size_t bc_spacings_size(const bc_spacings* sp) { return sp ? sp->sp.values.size() : 0; }
const double* bc_spacings_values(const bc_spacings* sp) { return sp ? sp->sp.values.data() : nullptr; }

bc_status bc_gof_statistics(const bc_spacings* sp, bc_gof* out) {
  return guard([&] {
    require(sp, "sp");
    require(out, "out");
    const auto g = bclab::gof_statistics(sp->sp);
    *out = bc_gof{g.ks, g.chi2, g.mean, g.variance, g.samples};
  });
}

bc_status bc_gof_json(const bc_spacings* sp, char** out) {
  return guard([&] {
    require(sp, "sp");
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::gof_statistics(sp->sp))));
  });
}

bc_status bc_histogram_build(const bc_spacings* sp, bc_histogram** out) {
  return guard([&] {
    require(sp, "sp");
    require(out, "out");
    *out = new bc_histogram{bclab::histogram(sp->sp)};
  });
}

void bc_histogram_free(bc_histogram* h) { delete h; }
size_t bc_histogram_bins(const bc_histogram* h) { return h ? bclab::kHistogramBins : 0; }
uint64_t bc_histogram_count(const bc_histogram* h, size_t bin) {
  return h && bin < bclab::kHistogramBins ? h->h.counts[bin] : 0;
}
double bc_histogram_overlay(const bc_histogram* h, size_t bin) {
  return h && bin < bclab::kHistogramBins ? h->h.overlay[bin] : 0.0;
}
uint64_t bc_histogram_overflow(const bc_histogram* h) { return h ? h->h.overflow : 0; }

bc_status bc_histogram_csv(const bc_histogram* h, char** out) {
  return guard([&] {
    require(h, "h");
    emit(out, bclab::io::histogram_csv(h->h));
  });
}

double bc_poisson_reference(unsigned ell, double s) { return bclab::poisson_reference(ell, s); }
double bc_poisson_overlay(double s, unsigned ell, size_t point_count) {
  return bclab::poisson_overlay(s, ell, point_count);
}

bc_status bc_pair_correlation(const bc_pointset* ps, const double* s_grid, size_t count, double* r_out) {
  return guard([&] {
    require(ps, "ps");
    require(s_grid, "s_grid");
    require(r_out, "r_out");
    const auto c = bclab::pair_correlation(ps->ps, std::span<const double>(s_grid, count));
    std::copy(c.r_values.begin(), c.r_values.end(), r_out);
  });
}

bc_status bc_pair_correlation_interval(const bc_pointset* ps, double a, double b, const double* s_grid,
                                       size_t count, double* r_out, size_t* window_count) {
  return guard([&] {
    require(ps, "ps");
    require(s_grid, "s_grid");
    require(r_out, "r_out");
    const auto c = bclab::pair_correlation_interval(ps->ps, bclab::Interval{a, b},
                                                    std::span<const double>(s_grid, count));
    std::copy(c.r_values.begin(), c.r_values.end(), r_out);
    if (window_count) *window_count = c.window_count;
  });
}

bc_status bc_correlation_csv(const double* s_grid, const double* r, size_t count, char** out) {
  return guard([&] {
    require(s_grid, "s_grid");
    require(r, "r");
    bclab::CorrelationCurve c;
    c.s_grid.assign(s_grid, s_grid + count);
    c.r_values.assign(r, r + count);
    emit(out, bclab::io::correlation_csv(c));
  });
}

bc_status bc_gaps(const bc_pointset* ps, double distinct_tol, bc_gap_report* out) {
  return guard([&] {
    require(ps, "ps");
    require(out, "out");
    const auto g = bclab::gaps(ps->ps, tol_arg(distinct_tol));
    *out = bc_gap_report{g.min_gap,
                         g.max_gap,
                         g.max_gap_index,
                         g.max_gap_left,
                         g.interior_max_gap,
                         g.interior_max_gap_index,
                         g.interior_max_gap_left,
                         g.distinct_tol,
                         g.ejk_applicable,
                         g.ejk_prediction_match};
  });
}

bc_status bc_gaps_json(const bc_pointset* ps, double distinct_tol, char** out) {
  return guard([&] {
    require(ps, "ps");
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::gaps(ps->ps, tol_arg(distinct_tol)))));
  });
}

// ---- sweeps -----------------------------------------------------------------

bc_status bc_sample_lambdas(double lo, double hi, size_t count, int monte_carlo, uint64_t seed, double* out) {
  return guard([&] {
    require(out, "out");
    const auto v = bclab::sample_lambdas(
        lo, hi, count, monte_carlo ? bclab::Quadrature::MonteCarlo : bclab::Quadrature::Midpoint, seed);
    std::copy(v.begin(), v.end(), out);
  });
}

bc_status bc_sweep_average_json(const bc_sweep_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    bclab::SweepConfig c;
    c.lambda_lo = cfg->lambda_lo;
    c.lambda_hi = cfg->lambda_hi;
    c.levels = cfg->levels;
    if (cfg->s_count > 0) {
      require(cfg->s_grid, "s_grid");
      c.s_grid.assign(cfg->s_grid, cfg->s_grid + cfg->s_count);
    }
    c.sample_count = cfg->sample_count;
    c.quadrature = cfg->monte_carlo ? bclab::Quadrature::MonteCarlo : bclab::Quadrature::Midpoint;
    c.seed = cfg->seed;
    c.form = to_form(cfg->form);
    c.workers = cfg->workers == 0 ? 1 : cfg->workers;
    c.keep_curves = cfg->keep_curves != 0;
    c.progress = cfg->progress != 0;
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::averaged_pair_correlation(c))));
  });
}

bc_status bc_min_gap_scan_json(const double* lambdas, size_t count, unsigned n_min, unsigned n_max,
                               double alpha_coef, double alpha_base, double alpha_power, unsigned workers,
                               char** out) {
  return guard([&] {
    if (count > 0) require(lambdas, "lambdas");
    bclab::MinGapConfig c;
    c.lambdas.assign(lambdas, lambdas + count);
    c.n_min = n_min;
    c.n_max = n_max;
    c.alpha = bclab::alpha_power_law(alpha_coef, alpha_base, alpha_power);
    c.workers = workers == 0 ? 1 : workers;
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::min_gap_scan(c))));
  });
}

bc_status bc_transversality_json(unsigned degree, size_t poly_samples, uint64_t seed, const double* rho_grid,
                                 size_t rho_count, double lo, double hi, unsigned workers, char** out) {
  return guard([&] {
    bclab::TransversalityConfig c;
    c.degree = degree;
    c.poly_samples = poly_samples;
    c.seed = seed;
    if (rho_count > 0) {
      require(rho_grid, "rho_grid");
      c.rho_grid.assign(rho_grid, rho_grid + rho_count);
    }
    c.lo = lo;
    c.hi = hi;
    c.workers = workers == 0 ? 1 : workers;
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::transversality_check(c))));
  });
}

bc_status bc_attract_json(double lo, double hi, unsigned depth, double epsilon, unsigned n_cap, char** out) {
  return guard([&] {
    bclab::AttractConfig c{lo, hi, depth, epsilon, n_cap};
    emit(out, bclab::io::dump(bclab::io::to_json(bclab::construct_attracting_parameter(c))));
  });
}

}  // extern "C"
