/* C interface to the CLRBTE distribution library: density/CDF/quantile
 * evaluation and sampling for the cubic lower record-based transmuted
 * exponential model and its comparison models (E, TE, TGR), descriptive
 * moments, nine-estimator fitting with goodness-of-fit statistics, model
 * comparison, and the Monte-Carlo estimator-comparison harness.
 *
 * Conventions: every fallible call returns clrbte_status; results travel
 * through out-parameters.  A failing call leaves a human-readable message in
 * clrbte_last_error() (thread-local).  Handles are opaque and must be
 * released with their matching free function.
 */
#ifndef CLRBTE_H
#define CLRBTE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clrbte_status {
  CLRBTE_OK = 0,
  CLRBTE_E_DOMAIN = 2,     /* invalid argument or parameter out of range */
  CLRBTE_E_ENVELOPE = 3,   /* acceptance-rejection envelope violation */
  CLRBTE_E_NOCONVERGE = 4, /* optimizer failed to converge */
  CLRBTE_E_NUMERIC = 5,    /* numerical failure (quadrature, overflow) */
  CLRBTE_E_INTERNAL = 6
} clrbte_status;

const char* clrbte_version(void);
/* message from the most recent failing call on this thread ("" if none) */
const char* clrbte_last_error(void);

/* ------------------------------------------------------------------ */
/* distribution handles                                                */

typedef struct clrbte_dist clrbte_dist;

/* family: "clrbte" (lambda, p1, p2), "e" (lambda), "te" (lambda, theta),
 * "tgr" (lambda, beta, theta) */
clrbte_status clrbte_dist_create(const char* family, const double* params,
                                 size_t n_params, clrbte_dist** out);
void clrbte_dist_free(clrbte_dist* d);

const char* clrbte_dist_family(const clrbte_dist* d);
size_t clrbte_dist_n_params(const clrbte_dist* d);
const char* clrbte_dist_param_name(const clrbte_dist* d, size_t index);

clrbte_status clrbte_dist_pdf(const clrbte_dist* d, double x, double* out);
clrbte_status clrbte_dist_log_pdf(const clrbte_dist* d, double x, double* out);
clrbte_status clrbte_dist_cdf(const clrbte_dist* d, double x, double* out);
clrbte_status clrbte_dist_survival(const clrbte_dist* d, double x, double* out);
clrbte_status clrbte_dist_hazard(const clrbte_dist* d, double x, double* out);
clrbte_status clrbte_dist_quantile(const clrbte_dist* d, double u, double* out);

/* n independent draws into out[0..n); deterministic in (seed, stream). */
clrbte_status clrbte_dist_sample(const clrbte_dist* d, size_t n, uint64_t seed,
                                 uint64_t stream, double* out);

/* acceptance-rejection sampling with an auto-tuned Weibull proposal
 * (clrbte family only) */
typedef struct clrbte_ar_info {
  double gamma;           /* proposal rate-like parameter */
  double nu;              /* proposal shape */
  double envelope_k;      /* safety-inflated envelope constant */
  double acceptance_rate; /* observed */
  uint64_t proposals;
} clrbte_ar_info;

clrbte_status clrbte_dist_sample_ar(const clrbte_dist* d, size_t n,
                                    uint64_t seed, uint64_t stream, double* out,
                                    clrbte_ar_info* info /* nullable */);

/* ------------------------------------------------------------------ */
/* descriptive statistics (clrbte family)                              */

typedef struct clrbte_moments {
  double mean;
  double variance;
  double sd;
  double cv;
  double skewness;
  double kurtosis;
  double raw[4]; /* E[X], E[X^2], E[X^3], E[X^4] */
} clrbte_moments;

clrbte_status clrbte_describe(double lambda, double p1, double p2,
                              clrbte_moments* out);

/* ------------------------------------------------------------------ */
/* fitting                                                             */

#define CLRBTE_MAX_PARAMS 3

/* estimators: "mle", "lse", "wlse", "ade", "cvme", "mpse", "rtade" (alias
 * "tade"), "msade", "msalde"; competitors support "mle" only */
typedef struct clrbte_fit_report {
  char family[8];
  char estimator[8];
  size_t n_params;
  char param_names[CLRBTE_MAX_PARAMS][8];
  double estimates[CLRBTE_MAX_PARAMS];
  double std_errors[CLRBTE_MAX_PARAMS]; /* NaN unless MLE */
  int se_reliable;
  int se_boundary_adjacent;
  double log_likelihood;
  double aic;
  double ks, ad, cvm;
  double p_ks, p_ad, p_cvm;
  /* parametric-bootstrap p-values; NaN unless bootstrap_reps > 0 */
  double boot_p_ks, boot_p_ad, boot_p_cvm;
  int bootstrap_reps_used;
  int converged;
  int iterations;
  int restarts_used;
} clrbte_fit_report;

/* Returns CLRBTE_E_NOCONVERGE when the optimizer did not converge; the
 * report is still filled with diagnostics in that case. */
clrbte_status clrbte_fit(const char* family, const char* estimator,
                         const double* data, size_t n, int bootstrap_reps,
                         uint64_t seed, clrbte_fit_report* out);

/* MLE fits of several families on one dataset, rows sorted by AIC ascending.
 * rows must hold n_families entries. */
clrbte_status clrbte_compare(const char* const* families, size_t n_families,
                             const double* data, size_t n,
                             clrbte_fit_report* rows);

/* ------------------------------------------------------------------ */
/* Monte-Carlo estimator comparison                                    */

typedef struct clrbte_sim_config {
  double lambda, p1, p2;       /* true parameters */
  const size_t* sizes;         /* ascending sample sizes */
  size_t n_sizes;
  const char* const* estimators;
  size_t n_estimators;
  size_t replications;
  uint64_t seed;
  int threads; /* <= 0 means hardware concurrency */
} clrbte_sim_config;

typedef struct clrbte_sim_cell {
  char estimator[8];
  size_t n;
  char parameter[8]; /* "lambda", "p1", "p2" */
  double bias, mse, mre;
  double mc_se_bias, mc_se_mse;
  double convergence_rate;
  int degenerate;
} clrbte_sim_cell;

/* Allocates *cells (length *n_cells); release with clrbte_sim_cells_free.
 * Cell order: estimator-major, then size, then parameter; independent of
 * the thread count. */
clrbte_status clrbte_simulate(const clrbte_sim_config* cfg,
                              clrbte_sim_cell** cells, size_t* n_cells);
void clrbte_sim_cells_free(clrbte_sim_cell* cells);

#ifdef __cplusplus
}
#endif

#endif /* CLRBTE_H */
