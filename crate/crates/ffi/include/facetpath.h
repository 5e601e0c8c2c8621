#ifndef FACETPATH_H
#define FACETPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FpMode {
  FP_MODE_EAGER = 0,
  FP_MODE_LAZY = 1,
} FpMode;

typedef enum FpStatus {
  FP_OK = 0,
  FP_ERR_NULL = 1,
  FP_ERR_INVALID_ARGUMENT = 2,
  FP_ERR_OUT_OF_RANGE = 3,
  FP_ERR_BUFFER_TOO_SMALL = 4,
  FP_ERR_BACKEND = 5,
  FP_ERR_IO = 6,
  FP_ERR_PANIC = 7,
} FpStatus;

typedef enum FpVerdict {
  FP_VERDICT_SAT = 0,
  FP_VERDICT_UNSAT = 1,
  FP_VERDICT_TIMEOUT = 2,
} FpVerdict;

/**
 * Enumerated candidate pivot sequences.
 */
typedef struct FpCandidates FpCandidates;

/**
 * A uniform chirotope.
 */
typedef struct FpChirotope FpChirotope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Enumerates candidates of `length` pivots for `(d, n)`. Bit `r` of
 * `revisit_mask` selects the class with `r` revisits (r ≤ 3).
 *
 * # Safety
 * `out` must be valid for writes. Free the result with `fp_candidates_free`.
 */
enum FpStatus fp_enumerate(size_t d,
                           size_t n,
                           size_t length,
                           uint32_t revisit_mask,
                           struct FpCandidates **out);

/**
 * # Safety
 * `set` must come from `fp_enumerate` (or be null) and not be used afterwards.
 */
void fp_candidates_free(struct FpCandidates *set);

/**
 * Total count, or the count of one revisit class when `revisits >= 0`.
 *
 * # Safety
 * `set` must be a live handle and `out` valid for writes.
 */
enum FpStatus fp_candidates_count(const struct FpCandidates *set, int32_t revisits, size_t *out);

/**
 * Copies the pivots of candidate `index` (0-based) as `(l, e)` pairs into
 * `pairs` (capacity `cap` pairs). `len` receives the number of pivots even
 * when the buffer is too small.
 *
 * # Safety
 * `pairs` must be valid for `2 * cap` writes; `set`, `len` as above.
 */
enum FpStatus fp_candidates_pivots(const struct FpCandidates *set,
                                   size_t index,
                                   uint32_t *pairs,
                                   size_t cap,
                                   size_t *len);

/**
 * Proves candidate `index` with the embedded solver. `time_limit` in
 * seconds; non-positive means unlimited.
 *
 * # Safety
 * `set` must be a live handle; `verdict` and `cuts` valid for writes
 * (`cuts` may be null).
 */
enum FpStatus fp_prove(const struct FpCandidates *set,
                       size_t index,
                       enum FpMode mode,
                       double time_limit,
                       enum FpVerdict *verdict,
                       size_t *cuts);

/**
 * Builds a chirotope from `len = C(n, r)` signs (±1) in colex order.
 *
 * # Safety
 * `signs` must be valid for `len` reads and `out` for writes.
 */
enum FpStatus fp_chirotope_new(size_t n,
                               size_t r,
                               const int8_t *signs,
                               size_t len,
                               struct FpChirotope **out);

/**
 * # Safety
 * `chi` must come from `fp_chirotope_new` (or be null).
 */
void fp_chirotope_free(struct FpChirotope *chi);

/**
 * Sign of an ordered tuple of `len = r` distinct elements.
 *
 * # Safety
 * `tuple` valid for `len` reads; `chi` live; `out` valid for writes.
 */
enum FpStatus fp_chirotope_evaluate(const struct FpChirotope *chi,
                                    const uint32_t *tuple,
                                    size_t len,
                                    int8_t *out);

/**
 * `out` = 1 if the Grassmann–Plücker sign conditions hold, else 0.
 *
 * # Safety
 * `chi` live; `out` valid for writes.
 */
enum FpStatus fp_chirotope_verify(const struct FpChirotope *chi, uint8_t *out);

/**
 * Number of facets, and of elements lying on no facet.
 *
 * # Safety
 * `chi` live; `facets` and `uncovered` valid for writes.
 */
enum FpStatus fp_chirotope_facet_count(const struct FpChirotope *chi,
                                       size_t *facets,
                                       size_t *uncovered);

/**
 * Number of GP axiom clauses and variables for rank `r` on `n` elements.
 *
 * # Safety
 * `clauses` and `vars` valid for writes.
 */
enum FpStatus fp_gp_clause_count(size_t n, size_t r, uint64_t *clauses, uint64_t *vars);

/**
 * Interval bounds on Δ(d, n). `with_computed` adds Δ(6,12) = Δ(4,11) = 6.
 * `has_hi` is 0 when no upper bound is known; `lo` = 0 means unknown.
 *
 * # Safety
 * Out-pointers valid for writes.
 */
enum FpStatus fp_bounds(size_t d,
                        size_t n,
                        uint8_t with_computed,
                        size_t *lo,
                        size_t *hi,
                        uint8_t *has_hi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FACETPATH_H */
