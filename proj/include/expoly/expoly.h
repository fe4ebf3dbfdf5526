/*
 * expoly: orthonormal polynomials for exponential weights rho = exp(-phi),
 * phi an even polynomial, in double-double arithmetic.
 *
 * Every function returns an expoly_status.  On failure the message for the
 * calling thread is available from expoly_last_error() until the next call
 * into the library from that thread.  Objects are opaque handles released
 * with their matching *_free function; passing NULL to *_free is a no-op.
 *
 * Values cross the boundary as doubles.  The *_text variants return the
 * full double-double value as a decimal string.
 */
#ifndef EXPOLY_EXPOLY_H
#define EXPOLY_EXPOLY_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define EXPOLY_API __attribute__((visibility("default")))
#else
#define EXPOLY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum expoly_status {
  EXPOLY_OK = 0,
  EXPOLY_INVALID_ARGUMENT = 1,
  EXPOLY_DOMAIN = 2,
  EXPOLY_RANGE = 3,
  EXPOLY_PRECONDITION = 4,
  EXPOLY_BREAKDOWN = 5,
  EXPOLY_INSUFFICIENT_DATA = 6,
  EXPOLY_IO = 7,
  EXPOLY_BUFFER_TOO_SMALL = 8,
  EXPOLY_INTERNAL = 9
} expoly_status;

typedef enum expoly_moment_method {
  EXPOLY_MOMENTS_QUADRATURE = 0,
  EXPOLY_MOMENTS_RECURSION = 1,
  EXPOLY_MOMENTS_CLOSED_FORM_HERMITE = 2
} expoly_moment_method;

typedef enum expoly_quadrature_kind {
  EXPOLY_QUADRATURE_WEDDLE = 0,
  EXPOLY_QUADRATURE_NEWTON_COTES7 = 1
} expoly_quadrature_kind;

typedef struct expoly_potential expoly_potential;
typedef struct expoly_quadrature expoly_quadrature;
typedef struct expoly_moments expoly_moments;
typedef struct expoly_recurrence expoly_recurrence;
typedef struct expoly_config expoly_config;

EXPOLY_API const char* expoly_version(void);
EXPOLY_API const char* expoly_status_string(expoly_status status);
EXPOLY_API const char* expoly_last_error(void);

/* ---- potential phi(x) = sum_p v_p x^{2p} ---- */

/* "hermite", "doublewell", or a comma-separated list "v0,v1,...". */
EXPOLY_API expoly_status expoly_potential_parse(const char* text, expoly_potential** out);
EXPOLY_API expoly_status expoly_potential_create(const double* v, size_t count, expoly_potential** out);
EXPOLY_API void expoly_potential_free(expoly_potential* pot);
EXPOLY_API expoly_status expoly_potential_half_degree(const expoly_potential* pot, int* out);
EXPOLY_API expoly_status expoly_potential_phi(const expoly_potential* pot, double x, double* out);
EXPOLY_API expoly_status expoly_potential_weight(const expoly_potential* pot, double x, double* out);

/* ---- composite quadrature on [-halfwidth, halfwidth], 6*panels+1 nodes ---- */

EXPOLY_API expoly_status expoly_quadrature_create(double halfwidth, int panels, expoly_quadrature_kind kind,
                                                  expoly_quadrature** out);
EXPOLY_API void expoly_quadrature_free(expoly_quadrature* rule);
EXPOLY_API expoly_status expoly_quadrature_size(const expoly_quadrature* rule, size_t* out);
/* Copies min(len, size) nodes / weights. */
EXPOLY_API expoly_status expoly_quadrature_nodes(const expoly_quadrature* rule, double* buf, size_t len);
EXPOLY_API expoly_status expoly_quadrature_weights(const expoly_quadrature* rule, double* buf, size_t len);

/* ---- moments mu_0..mu_{count-1} ---- */

EXPOLY_API expoly_status expoly_moments_compute(const expoly_potential* pot, const expoly_quadrature* rule,
                                                expoly_moment_method method, int count,
                                                expoly_moments** out);
EXPOLY_API void expoly_moments_free(expoly_moments* moments);
EXPOLY_API expoly_status expoly_moments_count(const expoly_moments* moments, int* out);
EXPOLY_API expoly_status expoly_moments_get(const expoly_moments* moments, int k, double* out);
EXPOLY_API expoly_status expoly_moments_get_text(const expoly_moments* moments, int k, char* buf, size_t len);
/* First index at which the recursion produced a non-positive moment, or -1. */
EXPOLY_API expoly_status expoly_moments_breakdown_index(const expoly_moments* moments, int* out);

/* ---- recurrence coefficients beta_k = a_k^2 ---- */

/* beta_0..beta_{n-1} by the Chebyshev algorithm; needs 2n-1 moments. */
EXPOLY_API expoly_status expoly_recurrence_from_moments(const expoly_moments* moments, int n, int even_path,
                                                        expoly_recurrence** out);
/* beta_k = k. */
EXPOLY_API expoly_status expoly_recurrence_hermite_exact(int n, expoly_recurrence** out);
EXPOLY_API void expoly_recurrence_free(expoly_recurrence* rec);
EXPOLY_API expoly_status expoly_recurrence_size(const expoly_recurrence* rec, int* out);
/* Number of leading coefficients with beta_k > 0. */
EXPOLY_API expoly_status expoly_recurrence_valid_upto(const expoly_recurrence* rec, int* out);
EXPOLY_API expoly_status expoly_recurrence_beta(const expoly_recurrence* rec, int k, double* out);
EXPOLY_API expoly_status expoly_recurrence_beta_text(const expoly_recurrence* rec, int k, char* buf, size_t len);
EXPOLY_API expoly_status expoly_recurrence_a(const expoly_recurrence* rec, int k, double* out);
/* max_k |beta_k - k|. */
EXPOLY_API expoly_status expoly_recurrence_hermite_error(const expoly_recurrence* rec, double* out);

/* ---- orthonormal basis ---- */

/* out[0..degree] = p_0(x)..p_degree(x). */
EXPOLY_API expoly_status expoly_basis_eval(const expoly_recurrence* rec, int degree, double x, double* out);
EXPOLY_API expoly_status expoly_gram_check(const expoly_potential* pot, const expoly_recurrence* rec, int degree,
                                           const expoly_quadrature* rule, double* out);
EXPOLY_API expoly_status expoly_magnus_asymptote(const expoly_potential* pot, int n, double* out);

/* ---- first-order equation (d/dx + B_n) p_n = A_n p_{n-1} ---- */

EXPOLY_API expoly_status expoly_ode_residual(const expoly_potential* pot, const expoly_recurrence* rec, int n,
                                             const double* nodes, size_t count, double* out);
/* Sets *out to -1 when no N_0 exists among the computable indices. */
EXPOLY_API expoly_status expoly_detect_n0(const expoly_potential* pot, const expoly_recurrence* rec, int* out);

/* ---- projection; function ids: exp, expsq, cos, f1..f4, x, poly:c0,c1,... ---- */

/* errors[N] for N = 0..max_degree (buffer of max_degree + 1). */
EXPOLY_API expoly_status expoly_projection_errors(const expoly_potential* pot, const expoly_recurrence* rec,
                                                  const expoly_quadrature* rule, const char* function_id,
                                                  int max_degree, double* errors);
EXPOLY_API expoly_status expoly_convergence_order(const expoly_potential* pot, const expoly_recurrence* rec,
                                                  const expoly_quadrature* rule, const char* function_id,
                                                  int max_degree, double* order, int* spectral);
EXPOLY_API expoly_status expoly_poincare_ratio(const expoly_potential* pot, const expoly_quadrature* rule,
                                               const char* function_id, double* out);
/* Exact decimal gamma_k for 0 <= k <= 3. */
EXPOLY_API expoly_status expoly_gamma_sequence(int k, char* buf, size_t len);

/* ---- batch experiments ---- */

EXPOLY_API expoly_status expoly_config_create(expoly_config** out);
EXPOLY_API void expoly_config_free(expoly_config* config);
/* Keys: potential, method, halfwidth, panels, rule, max_n, functions, out,
 * curve_n, x_min, x_max, x_count. */
EXPOLY_API expoly_status expoly_config_set(expoly_config* config, const char* key, const char* value);
/* Applies every `key = value` line of the file on top of the current values. */
EXPOLY_API expoly_status expoly_config_load_file(expoly_config* config, const char* path);
EXPOLY_API expoly_status expoly_config_hash(const expoly_config* config, uint64_t* out);
/* Runs a named experiment (moments, betas, basis, ode-check, project,
 * convergence, curves, validate-hermite, validate-doublewell) and copies a
 * text summary into buf.  EXPOLY_BUFFER_TOO_SMALL leaves a truncated,
 * NUL-terminated summary; the output files are complete regardless. */
EXPOLY_API expoly_status expoly_run(const expoly_config* config, const char* experiment, char* summary,
                                    size_t len);

#ifdef __cplusplus
}
#endif

#endif /* EXPOLY_EXPOLY_H */
