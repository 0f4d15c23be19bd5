#ifndef LSQ_H
#define LSQ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  LSQ_COUNT_ISOMORPHISM_CLASSES = 0,
  LSQ_COUNT_RRS_ISOTOPISM_CLASSES = 1,
  LSQ_COUNT_ISOTOPISM_CLASSES = 2,
  LSQ_COUNT_SPECIES = 3,
  LSQ_COUNT_ALL_SQUARES = 4,
} LsqCount;

typedef enum {
  LSQ_PROPERTY_SYMMETRIC = 0,
  LSQ_PROPERTY_SEMISYMMETRIC = 1,
  LSQ_PROPERTY_TOTALLY_SYMMETRIC = 2,
  LSQ_PROPERTY_REDUCED = 3,
  LSQ_PROPERTY_DIAGONAL = 4,
  LSQ_PROPERTY_IDEMPOTENT = 5,
  LSQ_PROPERTY_UNIPOTENT = 6,
} LsqProperty;

typedef enum {
  LSQ_RELATION_ISOMORPHISM = 0,
  LSQ_RELATION_RRS_ISOTOPISM = 1,
  LSQ_RELATION_ISOTOPISM = 2,
  LSQ_RELATION_SPECIES = 3,
} LsqRelation;

typedef enum {
  LSQ_STATUS_OK = 0,
  LSQ_STATUS_NULL_POINTER = 1,
  LSQ_STATUS_NOT_LATIN = 2,
  LSQ_STATUS_PARSE = 3,
  LSQ_STATUS_INVALID_ARGUMENT = 4,
  LSQ_STATUS_UNSUPPORTED = 5,
  LSQ_STATUS_PRECONDITION = 6,
  LSQ_STATUS_IO = 7,
  LSQ_STATUS_BUFFER_TOO_SMALL = 8,
  LSQ_STATUS_CLAIM_FAILED = 9,
  LSQ_STATUS_PANIC = 10,
} LsqStatus;

/**
 * Opaque Latin square.
 */
typedef struct LsqSquare LsqSquare;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *lsq_status_message(LsqStatus status);

/**
 * Message of the last failure on this thread.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes; `needed` null or writable.
 */
LsqStatus lsq_last_error(char *buf, size_t len, size_t *needed);

/**
 * Parses the text format: `n`, then `n` rows of `n` symbols.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
LsqStatus lsq_square_parse(const char *text, LsqSquare **out);

/**
 * Square of order `n` from `n*n` row-major symbols in `1..=n`.
 *
 * # Safety
 * `cells` must be valid for `n*n` bytes; `out` must be writable.
 */
LsqStatus lsq_square_from_cells(size_t n, const uint8_t *cells, LsqSquare **out);

/**
 * Releases a square; null is ignored.
 *
 * # Safety
 * `sq` must come from this library and not be used afterwards.
 */
void lsq_square_free(LsqSquare *sq);

/**
 * Order of the square, 0 for null.
 *
 * # Safety
 * `sq` must be null or a live handle.
 */
size_t lsq_square_order(const LsqSquare *sq);

/**
 * Symbol in row `r`, column `c` (zero-based positions).
 *
 * # Safety
 * `sq` must be a live handle; `out` writable.
 */
LsqStatus lsq_square_get(const LsqSquare *sq, size_t r, size_t c, size_t *out);

/**
 * Whether the square has `prop`.
 *
 * # Safety
 * `sq` must be a live handle; `out` writable.
 */
LsqStatus lsq_square_has(const LsqSquare *sq, LsqProperty prop, bool *out);

/**
 * Number of `i` with `L[i][i] = i`.
 *
 * # Safety
 * `sq` must be null or a live handle.
 */
size_t lsq_square_idempotent_count(const LsqSquare *sq);

/**
 * Canonical representative of the square's class under `rel`.
 *
 * # Safety
 * `sq` must be a live handle; `out` writable.
 */
LsqStatus lsq_square_canonical(const LsqSquare *sq, LsqRelation rel, LsqSquare **out);

/**
 * Whether two squares lie in the same class of `rel`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
LsqStatus lsq_square_equivalent(const LsqSquare *a, const LsqSquare *b, LsqRelation rel, bool *out);

/**
 * The square in text format.
 *
 * # Safety
 * `sq` must be a live handle; `buf` null or valid for `len` bytes;
 * `needed` null or writable.
 */
LsqStatus lsq_square_to_text(const LsqSquare *sq, char *buf, size_t len, size_t *needed);

/**
 * One count of a category as a decimal string. `filter` is a symmetry
 * optionally followed by `+shape` terms, e.g. `semisymmetric+idempotent`.
 *
 * # Safety
 * `filter` must be a NUL-terminated string; `buf` null or valid for
 * `len` bytes; `needed` null or writable.
 */
LsqStatus lsq_count(size_t order,
                    const char *filter,
                    LsqCount kind,
                    char *buf,
                    size_t len,
                    size_t *needed);

/**
 * Runs one verification suite with default bounds; `LSQ_CLAIM_FAILED`
 * when a claim fails. The text report goes to `buf` when it fits.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `buf` null or valid for `len`
 * bytes; `needed` null or writable.
 */
LsqStatus lsq_verify(const char *suite, char *buf, size_t len, size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LSQ_H */
