#ifndef MOPLS_H
#define MOPLS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MoplsStatus {
  MOPLS_STATUS_OK = 0,
  MOPLS_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed text, out-of-range values, or an insertion that breaks
   * validity.
   */
  MOPLS_STATUS_INVALID_INPUT = 2,
  MOPLS_STATUS_INFEASIBLE = 3,
  MOPLS_STATUS_UNSUPPORTED = 4,
  /**
   * The quantity does not exist for this input, e.g. the minimum distance
   * of a code with fewer than two words.
   */
  MOPLS_STATUS_UNDEFINED = 5,
  /**
   * The word space is too large for the exact computation.
   */
  MOPLS_STATUS_COMPUTE_LIMIT = 6,
  MOPLS_STATUS_INTERNAL = 7,
} MoplsStatus;

typedef enum MoplsFormat {
  MOPLS_FORMAT_GRID = 0,
  MOPLS_FORMAT_JSON = 1,
} MoplsFormat;

/**
 * Opaque square handle.
 */
typedef struct MoplsSquare MoplsSquare;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mopls_last_error_message(void);

/**
 * Empty square of order `n` with `k` layers.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum MoplsStatus mopls_square_new(size_t n, size_t k, struct MoplsSquare **out);

/**
 * Parses a text grid or a JSON record.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum MoplsStatus mopls_square_parse(const char *text, struct MoplsSquare **out);

/**
 * Fills `(row, col)` with `len` 0-based symbols, keeping the square valid.
 *
 * # Safety
 * `sq` must be a live handle and `entries` must point to `len` symbols.
 */
enum MoplsStatus mopls_square_insert(struct MoplsSquare *sq,
                                     size_t row,
                                     size_t col,
                                     const uint16_t *entries,
                                     size_t len);

/**
 * # Safety
 * `out` must be writable.
 */
enum MoplsStatus mopls_construct_min_mopls(size_t n, struct MoplsSquare **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum MoplsStatus mopls_construct_min_mpls(size_t n, struct MoplsSquare **out);

/**
 * Block-diagonal square from `len` block orders summing to `n`.
 *
 * # Safety
 * `blocks` must point to `len` values; `out` must be writable.
 */
enum MoplsStatus mopls_construct_k_mopls(size_t n,
                                         size_t k,
                                         const size_t *blocks,
                                         size_t len,
                                         struct MoplsSquare **out);

/**
 * `k` mutually orthogonal Latin squares of order `m`, superimposed.
 *
 * # Safety
 * `out` must be writable.
 */
enum MoplsStatus mopls_construct_k_ols(size_t k, size_t m, struct MoplsSquare **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `sq` must be null or a handle not yet freed.
 */
void mopls_square_free(struct MoplsSquare *sq);

/**
 * Order of the square, or 0 for null.
 *
 * # Safety
 * `sq` must be null or a live handle.
 */
size_t mopls_square_order(const struct MoplsSquare *sq);

/**
 * # Safety
 * `sq` must be null or a live handle.
 */
size_t mopls_square_layers(const struct MoplsSquare *sq);

/**
 * # Safety
 * `sq` must be null or a live handle.
 */
size_t mopls_square_filled(const struct MoplsSquare *sq);

/**
 * # Safety
 * `sq` must be a live handle and `out` writable.
 */
enum MoplsStatus mopls_square_is_maximal(const struct MoplsSquare *sq, bool *out);

/**
 * Serializes to a newly allocated string released with
 * [`mopls_string_free`].
 *
 * # Safety
 * `sq` must be a live handle and `out` writable.
 */
enum MoplsStatus mopls_square_serialize(const struct MoplsSquare *sq,
                                        enum MoplsFormat format,
                                        char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mopls_string_free(char *s);

/**
 * Minimum Hamming distance between the square's cell tuples.
 *
 * # Safety
 * `sq` must be a live handle and `out` writable.
 */
enum MoplsStatus mopls_code_min_distance(const struct MoplsSquare *sq, size_t *out);

/**
 * Exact covering radius of the square's code.
 *
 * # Safety
 * `sq` must be a live handle and `out` writable.
 */
enum MoplsStatus mopls_code_covering_radius(const struct MoplsSquare *sq, size_t *out);

/**
 * `ceil(n^2 / 3)`, a lower bound on the size of a maximal orthogonal pair
 * of order `n`.
 */
size_t mopls_lower_bound(size_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOPLS_H */
