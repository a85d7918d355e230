/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GAMMA3LAB_H
#define GAMMA3LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define G3L_FAMILY_F1 1

#define G3L_FAMILY_F2 2

#define G3L_FAMILY_F3 3

/**
 * Result code of every fallible call.
 */
typedef enum G3lStatus {
  G3L_STATUS_OK = 0,
  G3L_STATUS_NULL_POINTER = 1,
  G3L_STATUS_INVALID_ARGUMENT = 2,
  G3L_STATUS_UNKNOWN_FAMILY = 3,
  G3L_STATUS_ZERO_CONSTANT_TERM = 4,
  G3L_STATUS_NOT_NORMALIZED = 5,
  G3L_STATUS_ZERO_OUTSIDE_DISK = 6,
  G3L_STATUS_OUTSIDE_REGION = 7,
  G3L_STATUS_CERTIFICATION_MISMATCH = 8,
  G3L_STATUS_PANIC = 9,
} G3lStatus;

/**
 * Opaque result of `g3l_bound_compute`.
 */
typedef struct G3lBoundReport G3lBoundReport;

/**
 * Opaque truncated power series.
 */
typedef struct G3lSeries G3lSeries;

typedef struct G3lComplex {
  double re;
  double im;
} G3lComplex;

typedef struct G3lCarlsonSlacks {
  double first;
  double second;
  double third;
} G3lCarlsonSlacks;

/**
 * First three Taylor coefficients of a Schwarz function.
 */
typedef struct G3lSchwarzTriple {
  struct G3lComplex c1;
  struct G3lComplex c2;
  struct G3lComplex c3;
} G3lSchwarzTriple;

/**
 * Summary of a lower-bound search. `remark_value` is NaN unless the search
 * was restricted to real witnesses.
 */
typedef struct G3lSearchSummary {
  double best_value;
  double upper_bound;
  double remark_value;
  uint64_t iterations;
  struct G3lSchwarzTriple witness;
} G3lSearchSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *g3l_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *g3l_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not
 * been freed.
 */
void g3l_string_free(char *s);

/**
 * Builds a series from `len` coefficients (order `len - 1`).
 *
 * # Safety
 * `coeffs` must point to `len` readable values; `out` must be writable.
 */
enum G3lStatus g3l_series_new(const struct G3lComplex *coeffs, size_t len, struct G3lSeries **out);

/**
 * # Safety
 * `series` must be null or a live handle from this library.
 */
void g3l_series_free(struct G3lSeries *series);

/**
 * Truncation order; 0 for a null handle.
 *
 * # Safety
 * `series` must be null or a live handle.
 */
size_t g3l_series_order(const struct G3lSeries *series);

/**
 * Coefficient `k`; zero beyond the order.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum G3lStatus g3l_series_coeff(const struct G3lSeries *series, size_t k, struct G3lComplex *out);

/**
 * Cauchy product truncated to the smaller order.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum G3lStatus g3l_series_multiply(const struct G3lSeries *a,
                                   const struct G3lSeries *b,
                                   struct G3lSeries **out);

/**
 * Multiplicative inverse; fails with `ZeroConstantTerm`.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum G3lStatus g3l_series_reciprocal(const struct G3lSeries *series, struct G3lSeries **out);

/**
 * `log(f(z)/z)` for a normalized `f`; fails with `NotNormalized`.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum G3lStatus g3l_series_log_over_z(const struct G3lSeries *series, struct G3lSeries **out);

/**
 * Closed-form `γ₃` for the family and Schwarz coefficients `c1, c2, c3`.
 *
 * # Safety
 * `out` must be writable.
 */
enum G3lStatus g3l_gamma3_closed_form(uint32_t family_code,
                                      struct G3lComplex c1,
                                      struct G3lComplex c2,
                                      struct G3lComplex c3,
                                      struct G3lComplex *out);

/**
 * `γ₃` via the series logarithm for the Blaschke product
 * `rotation · z · Π (z − αₖ)/(1 − ᾱₖ z)`.
 *
 * # Safety
 * `zeros` must point to `zero_count` readable values (or be null when
 * `zero_count` is 0); `out` must be writable.
 */
enum G3lStatus g3l_gamma3_blaschke(uint32_t family_code,
                                   const struct G3lComplex *zeros,
                                   size_t zero_count,
                                   struct G3lComplex rotation,
                                   struct G3lComplex *out);

/**
 * The three Carlson slacks; all are non-negative for a Schwarz function.
 *
 * # Safety
 * `out` must be writable.
 */
enum G3lStatus g3l_carlson_check(struct G3lComplex c1,
                                 struct G3lComplex c2,
                                 struct G3lComplex c3,
                                 struct G3lCarlsonSlacks *out);

/**
 * Maximizes the family objective and certifies it on a dense grid.
 *
 * # Safety
 * `out` must be writable.
 */
enum G3lStatus g3l_bound_compute(uint32_t family_code,
                                 double grid_step,
                                 double newton_tol,
                                 struct G3lBoundReport **out);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
void g3l_bound_free(struct G3lBoundReport *report);

/**
 * Bound on `|γ₃|`; NaN for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
double g3l_bound_gamma3(const struct G3lBoundReport *report);

/**
 * Maximum of the objective over the region and where it is attained.
 *
 * # Safety
 * `report` must be a live handle; `x`, `y` and `value` must be writable.
 */
enum G3lStatus g3l_bound_argmax(const struct G3lBoundReport *report,
                                double *x,
                                double *y,
                                double *value);

/**
 * Number of interior critical points found.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t g3l_bound_interior_count(const struct G3lBoundReport *report);

/**
 * The full report as JSON. Free the result with [`g3l_string_free`].
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum G3lStatus g3l_bound_to_json(const struct G3lBoundReport *report, char **out);

/**
 * Randomized lower-bound search for `sup |γ₃|`.
 *
 * # Safety
 * `out` must be writable.
 */
enum G3lStatus g3l_search(uint32_t family_code,
                          uint64_t iterations,
                          uint64_t seed,
                          bool real_only,
                          uint32_t max_degree,
                          struct G3lSearchSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMA3LAB_H */
