/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef HETX_H
#define HETX_H

/*
 * C API of the hetx shared library: estimation and testing for
 * heteroscedastic time-series extremes.
 *
 * Conventions:
 *  - every function returns a status code (HETX_OK on success);
 *  - on failure, hetx_last_error() describes the problem (thread-local);
 *  - objects are opaque handles released with the matching *_free function;
 *  - strings returned through char** are heap-allocated, release with
 *    hetx_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HETX_OK 0
#define HETX_E_CONFIG 2
#define HETX_E_DATA 3
#define HETX_E_INTERNAL 4

/* scale families */
#define HETX_FAMILY_C1 0
#define HETX_FAMILY_C2 1
#define HETX_FAMILY_C1_THRESHOLD 2
#define HETX_FAMILY_C2_THRESHOLD 3

/* test statistics */
#define HETX_STAT_KS 0
#define HETX_STAT_CVM 1

/* multiplier laws */
#define HETX_MULT_RADEMACHER 0
#define HETX_MULT_MAMMEN 1
#define HETX_MULT_UNIFORM 2

typedef struct hetx_series hetx_series;
typedef struct hetx_sim hetx_sim;
typedef struct hetx_curve hetx_curve;
typedef struct hetx_report hetx_report;
typedef struct hetx_ei hetx_ei;

const char* hetx_version(void);
const char* hetx_last_error(void);
void hetx_string_free(char* s);

/* ---- series ---------------------------------------------------------- */

int hetx_series_create(const double* values, size_t n, hetx_series** out);
int hetx_series_from_csv(const char* path, const char* column, hetx_series** out);
void hetx_series_free(hetx_series* s);
size_t hetx_series_size(const hetx_series* s);
const double* hetx_series_values(const hetx_series* s);

/* ---- simulation ------------------------------------------------------ */

/* ARMAX scale model; lambda = 0 gives the independent model. */
int hetx_simulate_armax(int n, double lambda, int family, double beta, uint64_t seed,
                        hetx_sim** out);

/* ARCH scale model; tail_index 0 auto-fills the tabulated value (lambda=0.7).
 * marginal_table_path may be NULL or empty: threshold families then fail and
 * the uniformized series is unavailable. */
int hetx_simulate_arch(int n, double lambda, int family, double beta, long long burn_in,
                       double tail_index, const char* marginal_table_path, uint64_t seed,
                       hetx_sim** out);

void hetx_sim_free(hetx_sim* sim);
const hetx_series* hetx_sim_series(const hetx_sim* sim);
/* columns: index, x, w, u (u empty -> NaN) */
int hetx_sim_write_csv(const hetx_sim* sim, const char* path);
/* dumps the sequential tail empirical processes of the simulated data on
 * uniform grids; which = 0 writes the uniformized-series variant, 1 the
 * observable-series variant */
int hetx_sim_step_csv(const hetx_sim* sim, int k, int grid_s, int grid_x, double x_max, int which,
                      const char* path);

/* ---- scedasis estimation --------------------------------------------- */

/* grid may be NULL: the default grid (512 interior points plus endpoints) is
 * used. */
int hetx_scedasis(const hetx_series* series, int k, double h, double kappa, const double* grid,
                  size_t grid_len, hetx_curve** out);
void hetx_curve_free(hetx_curve* c);
size_t hetx_curve_size(const hetx_curve* c);
int hetx_curve_row(const hetx_curve* c, size_t i, double* s, double* ctilde, double* chat);
int hetx_curve_write_csv(const hetx_curve* c, const char* path);

/* ---- tests ------------------------------------------------------------ */

int hetx_bootstrap_test(const hetx_series* series, int k, int r, int B, double alpha,
                        int statistic, int multiplier, uint64_t seed, hetx_report** out);
/* quantile_table_path NULL/empty = shipped default table */
int hetx_selfnorm_test(const hetx_series* series, int k, int r, int statistic, double alpha,
                       const char* quantile_table_path, uint64_t seed, hetx_report** out);
/* cvm_quantile_95 <= 0 selects the pinned default */
int hetx_indep_cvm_test(const hetx_series* series, int k, double cvm_quantile_95,
                        hetx_report** out);

void hetx_report_free(hetx_report* r);
int hetx_report_to_json(const hetx_report* r, char** out);
int hetx_report_reject(const hetx_report* r, int* out);
int hetx_report_statistic(const hetx_report* r, double* out);
/* p_value is NaN for tests without one */
int hetx_report_p_value(const hetx_report* r, double* out);

/* ---- extremal index ---------------------------------------------------- */

int hetx_ei_estimate(const hetx_series* series, int q, int k, double h, double kappa,
                     int grid_size, hetx_ei** out);
void hetx_ei_free(hetx_ei* e);
int hetx_ei_to_json(const hetx_ei* e, char** out);
int hetx_ei_theta(const hetx_ei* e, double* theta1, double* theta2);

/* ---- reference quantile tables ----------------------------------------- */

/* Simulates the self-normalization reference quantiles and writes the CSV
 * table (alpha, q_S, q_T, paths, grid, seed). */
int hetx_selfnorm_quantiles_generate(const double* alphas, size_t n_alphas, long long paths,
                                     int grid, uint64_t seed, const char* out_path);

/* Upper quantiles of the integrated squared Brownian bridge. */
int hetx_cvm_quantiles_generate(const double* levels, size_t n_levels, long long paths, int grid,
                                uint64_t seed, const char* out_path);

/* Cached marginal quantile table of the ARCH base process. */
int hetx_archf_table_generate(long long n_sim, long long burn_in, double lambda, uint64_t seed,
                              const char* out_path);

/* ---- experiments ------------------------------------------------------- */

/* kind: "table1" (rejection rates) or "mse" (extremal-index error curves).
 * spec_json may be NULL/empty for the desk-scale defaults; threads <= 0 and
 * seed == 0 keep the config values. Writes <out_dir>/<kind>.csv and
 * <out_dir>/<kind>_config.json; *table_path_out (optional) receives the CSV
 * path. */
int hetx_experiment_run(const char* kind, const char* spec_json, const char* out_dir, int threads,
                        uint64_t seed, char** table_path_out);

/* Full analysis of one CSV column; writes report.json and plot-ready CSV
 * files into out_dir; *report_json_out (optional) receives the report. */
int hetx_analyze_csv(const char* path, const char* column, int k, int r, int q, double h,
                     double kappa, double alpha, int B, uint64_t seed,
                     const char* quantile_table_path, const char* out_dir,
                     char** report_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HETX_H */
