#ifndef COLORED_BETTI_H
#define COLORED_BETTI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; one per library error kind plus FFI-level failures.
 */
typedef enum CbStatus {
  CB_STATUS_OK = 0,
  CB_STATUS_NULL_POINTER = 1,
  CB_STATUS_INVALID_UTF8 = 2,
  CB_STATUS_PARSE_ERROR = 3,
  CB_STATUS_VERTEX_OUT_OF_RANGE = 4,
  CB_STATUS_ISOLATED_VERTEX_MISSING = 5,
  CB_STATUS_EMPTY_FACET_LIST = 6,
  CB_STATUS_INVALID_DIMENSION = 7,
  CB_STATUS_VERTEX_BUDGET_EXCEEDED = 8,
  CB_STATUS_NOT_A_COMPLEX = 9,
  CB_STATUS_PARTITION_MISMATCH = 10,
  CB_STATUS_COLOR_OUT_OF_RANGE = 11,
  CB_STATUS_NOT_A_MEMBER = 12,
  CB_STATUS_DEGENERATE_PARTITION = 13,
  CB_STATUS_MISMATCH_FOUND = 14,
  CB_STATUS_INVALID_FIELD = 15,
  CB_STATUS_PANIC = 16,
} CbStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct CbComplex CbComplex;

/**
 * Opaque vertex partition.
 */
typedef struct CbPartition CbPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *cb_last_error_message(void);

/**
 * Parses the text format (`m N` then `facet ...` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CbStatus cb_complex_parse(const char *text, struct CbComplex **out);

/**
 * # Safety
 * `k` must come from [`cb_complex_parse`] and not be freed twice. NULL is ignored.
 */
void cb_complex_free(struct CbComplex *k);

/**
 * # Safety
 * `k` must be a live handle or NULL (returns 0).
 */
size_t cb_complex_vertex_count(const struct CbComplex *k);

/**
 * `dim K`, −1 for the void complex or a NULL handle.
 *
 * # Safety
 * `k` must be a live handle or NULL.
 */
int32_t cb_complex_dimension(const struct CbComplex *k);

/**
 * `β_{i,ω}` with `ω` given as `omega_len` 1-based vertices. `field` may be NULL (rationals).
 *
 * # Safety
 * `omega` must point to `omega_len` readable values (may be NULL when `omega_len` is 0).
 */
enum CbStatus cb_betti_number(const struct CbComplex *k,
                              size_t i,
                              const size_t *omega,
                              size_t omega_len,
                              const char *field,
                              uint64_t *out);

/**
 * Betti table as a JSON array of `{i, omega, beta}`.
 *
 * # Safety
 * `k` must be live; `out` receives a string to release with [`cb_string_free`].
 */
enum CbStatus cb_betti_table_json(const struct CbComplex *k, const char *field, char **out);

/**
 * Parses `blocks 1 3 | 2 4` for the vertices of `k`.
 *
 * # Safety
 * `k` must be live, `text` NUL-terminated, `out` writable.
 */
enum CbStatus cb_partition_parse(const struct CbComplex *k,
                                 const char *text,
                                 struct CbPartition **out);

/**
 * Greedy coloring of the 1-skeleton.
 *
 * # Safety
 * `k` must be live and `out` writable.
 */
enum CbStatus cb_partition_greedy(const struct CbComplex *k, struct CbPartition **out);

/**
 * Coloring with the fewest colors.
 *
 * # Safety
 * `k` must be live and `out` writable.
 */
enum CbStatus cb_partition_minimum(const struct CbComplex *k, struct CbPartition **out);

/**
 * # Safety
 * `p` must be a live handle or NULL (returns 0).
 */
size_t cb_partition_block_count(const struct CbPartition *p);

/**
 * # Safety
 * `p` must come from one of the `cb_partition_*` constructors. NULL is ignored.
 */
void cb_partition_free(struct CbPartition *p);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum CbStatus cb_partition_is_nondegenerate(const struct CbComplex *k,
                                            const struct CbPartition *p,
                                            bool *out);

/**
 * Tor table JSON. `weight_bound` 0 selects the default bound.
 *
 * # Safety
 * Handles must be live; `out` receives a string to release with [`cb_string_free`].
 */
enum CbStatus cb_tor_json(const struct CbComplex *k,
                          const struct CbPartition *p,
                          const char *field,
                          uint32_t weight_bound,
                          char **out);

/**
 * Full verification report as JSON; `pass` receives the overall verdict.
 * `weight_bound` 0 selects the default bound.
 *
 * # Safety
 * Handles must be live; `out` receives a string to release with [`cb_string_free`];
 * `pass` must be writable.
 */
enum CbStatus cb_verify_json(const struct CbComplex *k,
                             const struct CbPartition *p,
                             const char *field,
                             uint32_t weight_bound,
                             char **out,
                             bool *pass);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must have been returned through a `char **` out-parameter of this library.
 */
void cb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COLORED_BETTI_H */
