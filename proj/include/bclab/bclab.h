/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the finite Bernoulli convolution laboratory.
 *
 * Objects are opaque handles created by bc_* constructors and released by
 * the matching *_free function. Every fallible call returns a bc_status; on
 * failure the message is available from bc_last_error() on the same thread
 * until the next failing call. Strings returned through char** are owned by
 * the caller and released with bc_string_free().
 */
#ifndef BCLAB_H
#define BCLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BCLAB_BUILDING_LIBRARY)
#    define BCLAB_API __declspec(dllexport)
#  else
#    define BCLAB_API __declspec(dllimport)
#  endif
#else
#  define BCLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values match the CLI exit codes. */
typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_INTERNAL = 1,
  BC_ERR_USAGE = 2,
  BC_ERR_RESOURCE = 3,
  BC_ERR_DOMAIN = 4
} bc_status;

typedef enum bc_form { BC_FORM_STANDARD = 0, BC_FORM_PRIMED = 1 } bc_form;

typedef struct bc_pointset bc_pointset;
typedef struct bc_exact bc_exact;
typedef struct bc_cdf bc_cdf;
typedef struct bc_sequence bc_sequence;
typedef struct bc_spacings bc_spacings;
typedef struct bc_histogram bc_histogram;

BCLAB_API const char* bc_version(void);
BCLAB_API const char* bc_last_error(void);
BCLAB_API void bc_string_free(char* s);

/* ---- point sets ------------------------------------------------------- */

BCLAB_API bc_status bc_generate(double lambda, unsigned levels, bc_form form, bc_pointset** out);
BCLAB_API bc_status bc_pointset_to_standard(const bc_pointset* ps, bc_pointset** out);
BCLAB_API void bc_pointset_free(bc_pointset* ps);
BCLAB_API size_t bc_pointset_size(const bc_pointset* ps);
BCLAB_API const double* bc_pointset_values(const bc_pointset* ps);
BCLAB_API double bc_pointset_lambda(const bc_pointset* ps);
BCLAB_API unsigned bc_pointset_levels(const bc_pointset* ps);
BCLAB_API bc_form bc_pointset_form(const bc_pointset* ps);
/* Nonzero when lambda <= 1/2, outside the range of interest. */
BCLAB_API int bc_pointset_outside_range(const bc_pointset* ps);
BCLAB_API bc_status bc_pointset_write_binary(const bc_pointset* ps, const char* path);
BCLAB_API bc_status bc_pointset_read_binary(const char* path, bc_pointset** out);
BCLAB_API bc_status bc_pointset_write_csv(const bc_pointset* ps, const char* path);

/* ---- exact backend ---------------------------------------------------- */

/* minpoly is text such as "x^2+x-1" or a JSON coefficient array "[-1,1,1]". */
BCLAB_API bc_status bc_generate_exact(const char* minpoly, unsigned levels, bc_exact** out);
BCLAB_API void bc_exact_free(bc_exact* eps);
BCLAB_API size_t bc_exact_distinct_count(const bc_exact* eps);
BCLAB_API uint64_t bc_exact_multiplicity(const bc_exact* eps, size_t i);
BCLAB_API double bc_exact_coincidence_rate(const bc_exact* eps);
/* Residue i as a JSON array of rational strings, constant-first. */
BCLAB_API bc_status bc_exact_residue_json(const bc_exact* eps, size_t i, char** out);
BCLAB_API bc_status bc_reduce_mod_minpoly(const uint8_t* digits, size_t count, const char* minpoly,
                                          char** out_json);
/* Full report: distinct counts, coincidence rate, classification, growth. */
BCLAB_API bc_status bc_exact_report_json(const char* minpoly, unsigned levels, char** out);

/* ---- algebraic -------------------------------------------------------- */

BCLAB_API bc_status bc_classify_json(const char* poly, char** out);
/* Greedy digits c_1..c_k plus the zero of 1 - sum c_n x^n above lambda. */
BCLAB_API bc_status bc_greedy_json(double lambda, unsigned k, char** out);
/* Zero of 1 - sum c_n x^n in [lambda, lambda + lambda^k); poly_out optional. */
BCLAB_API bc_status bc_nearest_zero(double lambda, unsigned k, double* root, char** poly_out);
BCLAB_API bc_status bc_forbidden_block(const int* c, size_t k, char** block_out);
BCLAB_API bc_status bc_growth_json(const char* block, char** out);

/* ---- statistics ------------------------------------------------------- */

BCLAB_API bc_status bc_cdf_sqrt_half(bc_cdf** out);
BCLAB_API bc_status bc_cdf_empirical(double lambda, unsigned level, size_t knots, bc_cdf** out);
BCLAB_API double bc_cdf_eval(const bc_cdf* cdf, double x, int* clamped);
BCLAB_API void bc_cdf_free(bc_cdf* cdf);

BCLAB_API bc_status bc_rescale(const bc_pointset* ps, const bc_cdf* cdf, bc_sequence** out);
BCLAB_API void bc_sequence_free(bc_sequence* seq);
BCLAB_API size_t bc_sequence_size(const bc_sequence* seq);
BCLAB_API const double* bc_sequence_values(const bc_sequence* seq);
BCLAB_API size_t bc_sequence_warning_count(const bc_sequence* seq);
BCLAB_API const char* bc_sequence_warning(const bc_sequence* seq, size_t i);

BCLAB_API bc_status bc_spacings_pointset(const bc_pointset* ps, unsigned ell, bc_spacings** out);
BCLAB_API bc_status bc_spacings_sequence(const bc_sequence* seq, unsigned ell, bc_spacings** out);
BCLAB_API void bc_spacings_free(bc_spacings* sp);
BCLAB_API size_t bc_spacings_size(const bc_spacings* sp);
BCLAB_API const double* bc_spacings_values(const bc_spacings* sp);

typedef struct bc_gof {
  double ks;
  double chi2;
  double mean;
  double variance;
  size_t samples;
} bc_gof;

BCLAB_API bc_status bc_gof_statistics(const bc_spacings* sp, bc_gof* out);
BCLAB_API bc_status bc_gof_json(const bc_spacings* sp, char** out);

BCLAB_API bc_status bc_histogram_build(const bc_spacings* sp, bc_histogram** out);
BCLAB_API void bc_histogram_free(bc_histogram* h);
BCLAB_API size_t bc_histogram_bins(const bc_histogram* h);
BCLAB_API uint64_t bc_histogram_count(const bc_histogram* h, size_t bin);
BCLAB_API double bc_histogram_overlay(const bc_histogram* h, size_t bin);
BCLAB_API uint64_t bc_histogram_overflow(const bc_histogram* h);
/* bin_left,bin_right,count,overlay */
BCLAB_API bc_status bc_histogram_csv(const bc_histogram* h, char** out);

BCLAB_API double bc_poisson_reference(unsigned ell, double s);
BCLAB_API double bc_poisson_overlay(double s, unsigned ell, size_t point_count);

/* r_out receives one R2 value per grid point. */
BCLAB_API bc_status bc_pair_correlation(const bc_pointset* ps, const double* s_grid, size_t count,
                                        double* r_out);
BCLAB_API bc_status bc_pair_correlation_interval(const bc_pointset* ps, double a, double b,
                                                 const double* s_grid, size_t count, double* r_out,
                                                 size_t* window_count);
/* s,r2 */
BCLAB_API bc_status bc_correlation_csv(const double* s_grid, const double* r, size_t count, char** out);

typedef struct bc_gap_report {
  double min_gap;
  double max_gap;
  size_t max_gap_index;
  double max_gap_left;
  double interior_max_gap;
  size_t interior_max_gap_index;
  double interior_max_gap_left;
  double distinct_tol;
  int ejk_applicable;
  int ejk_prediction_match;
} bc_gap_report;

/* distinct_tol < 0 selects the default relative tolerance 2^-44. */
BCLAB_API bc_status bc_gaps(const bc_pointset* ps, double distinct_tol, bc_gap_report* out);
BCLAB_API bc_status bc_gaps_json(const bc_pointset* ps, double distinct_tol, char** out);

/* ---- sweeps ----------------------------------------------------------- */

typedef struct bc_sweep_config {
  double lambda_lo;
  double lambda_hi;
  unsigned levels;
  const double* s_grid;
  size_t s_count;
  size_t sample_count;
  int monte_carlo; /* 0 = midpoint rule */
  uint64_t seed;
  bc_form form;
  unsigned workers;
  int keep_curves;
  int progress;
} bc_sweep_config;

BCLAB_API bc_status bc_sample_lambdas(double lo, double hi, size_t count, int monte_carlo, uint64_t seed,
                                      double* out);
BCLAB_API bc_status bc_sweep_average_json(const bc_sweep_config* cfg, char** out);
/* alpha_N = alpha_coef * alpha_base^-N * N^-alpha_power */
BCLAB_API bc_status bc_min_gap_scan_json(const double* lambdas, size_t count, unsigned n_min,
                                         unsigned n_max, double alpha_coef, double alpha_base,
                                         double alpha_power, unsigned workers, char** out);
BCLAB_API bc_status bc_transversality_json(unsigned degree, size_t poly_samples, uint64_t seed,
                                           const double* rho_grid, size_t rho_count, double lo,
                                           double hi, unsigned workers, char** out);
BCLAB_API bc_status bc_attract_json(double lo, double hi, unsigned depth, double epsilon, unsigned n_cap,
                                    char** out);

#ifdef __cplusplus
}
#endif

#endif /* BCLAB_H */
