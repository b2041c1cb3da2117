#ifndef PVF_H
#define PVF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum PvfStatus {
  PVF_STATUS_OK = 0,
  PVF_STATUS_NULL_POINTER = 1,
  PVF_STATUS_INVALID_UTF8 = 2,
  PVF_STATUS_INVALID_INPUT = 3,
  PVF_STATUS_UNCERTAIN = 4,
  PVF_STATUS_NO_CONVERGENCE = 5,
  PVF_STATUS_INDEX_OUT_OF_RANGE = 6,
  PVF_STATUS_PANIC = 7,
} PvfStatus;

/**
 * A combinatorial class with its invariants.
 */
typedef struct PvfMetricGraph PvfMetricGraph;

/**
 * A monic centered polynomial vector field.
 */
typedef struct PvfPolynomial PvfPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static version string; do not free.
 */
const char *pvf_version(void);

/**
 * Message of the last failure on this thread, or null. Free with
 * `pvf_string_free`.
 */
char *pvf_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pvf_string_free(char *s);

/**
 * Parse `coeffs: a0,...,1` or `roots: z1^m1, ...`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PvfStatus pvf_polynomial_parse(const char *text, struct PvfPolynomial **out);

/**
 * Build from `len` coefficients, constant term first; the last must be 1
 * and the second to last 0.
 *
 * # Safety
 * `re` and `im` must each point to `len` doubles; `out` must be valid.
 */
enum PvfStatus pvf_polynomial_from_coeffs(const double *re,
                                          const double *im,
                                          uintptr_t len,
                                          struct PvfPolynomial **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not yet freed.
 */
void pvf_polynomial_free(struct PvfPolynomial *p);

/**
 * Degree, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uintptr_t pvf_polynomial_degree(const struct PvfPolynomial *p);

/**
 * Coefficient text (`coeffs: ...`); free with `pvf_string_free`.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *pvf_polynomial_to_text(const struct PvfPolynomial *p);

/**
 * Coefficient `index` (0 = constant term).
 *
 * # Safety
 * `p` must be a live handle; `re` and `im` valid pointers.
 */
enum PvfStatus pvf_polynomial_coeff(const struct PvfPolynomial *p,
                                    uintptr_t index,
                                    double *re,
                                    double *im);

/**
 * Trace all separatrices and compute the metric graph.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum PvfStatus pvf_classify(const struct PvfPolynomial *p, struct PvfMetricGraph **out);

/**
 * Parse the metric-graph text format.
 *
 * # Safety
 * `text` must be NUL-terminated and `out` valid.
 */
enum PvfStatus pvf_metric_graph_parse(const char *text, struct PvfMetricGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
void pvf_metric_graph_free(struct PvfMetricGraph *g);

/**
 * Metric-graph text (bit-exact); free with `pvf_string_free`.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
char *pvf_metric_graph_to_text(const struct PvfMetricGraph *g);

/**
 * Bracket notation of the class; free with `pvf_string_free`.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
char *pvf_metric_graph_class(const struct PvfMetricGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
uintptr_t pvf_metric_graph_tau_count(const struct PvfMetricGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
uintptr_t pvf_metric_graph_alpha_count(const struct PvfMetricGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum PvfStatus pvf_metric_graph_tau(const struct PvfMetricGraph *g, uintptr_t index, double *out);

/**
 * # Safety
 * `g` must be a live handle; `re` and `im` valid.
 */
enum PvfStatus pvf_metric_graph_alpha(const struct PvfMetricGraph *g,
                                      uintptr_t index,
                                      double *re,
                                      double *im);

/**
 * Construct a polynomial with the given metric graph.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum PvfStatus pvf_realize(const struct PvfMetricGraph *g,
                           uint64_t seed,
                           struct PvfPolynomial **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PVF_H */
