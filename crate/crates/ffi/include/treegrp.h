#ifndef TREEGRP_H
#define TREEGRP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define TG_OK 0

#define TG_NULL_POINTER 1

#define TG_INVALID_ARGUMENT 2

#define TG_DEPTH_MISMATCH 3

#define TG_BUFFER_TOO_SMALL 4

#define TG_CAP_EXCEEDED 5

#define TG_CHECK_FAILED 6

#define TG_INTERNAL 7

/**
 * An element of `G(d)`.
 */
typedef struct TgElement TgElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *tg_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
int32_t tg_identity(uint32_t depth, struct TgElement **out);

/**
 * The generator `a_index`: one nontrivial label at `0^index`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t tg_generator(uint32_t depth, uint32_t index, struct TgElement **out);

/**
 * Decodes the little-endian portrait byte format.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes; `out` must be valid for writes.
 */
int32_t tg_decode(const uint8_t *bytes, size_t len, uint32_t depth, struct TgElement **out);

/**
 * Writes the byte encoding of `g` into `buf`. `*written` always receives
 * the required length; a null or short buffer yields
 * `TG_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `g` must be a live handle; `buf` must have `capacity` writable bytes or
 * be null; `written` must be valid for writes.
 */
int32_t tg_encode(const struct TgElement *g, uint8_t *buf, size_t capacity, size_t *written);

/**
 * # Safety
 * `hex` must be a NUL-terminated string; `out` must be valid for writes.
 */
int32_t tg_from_hex(const char *hex, uint32_t depth, struct TgElement **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
int32_t tg_to_hex(const struct TgElement *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
int32_t tg_depth(const struct TgElement *g, uint32_t *out);

/**
 * `lhs * rhs`, with `rhs` acting first.
 *
 * # Safety
 * `lhs` and `rhs` must be live handles; `out` must be valid for writes.
 */
int32_t tg_compose(const struct TgElement *lhs,
                   const struct TgElement *rhs,
                   struct TgElement **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
int32_t tg_invert(const struct TgElement *g, struct TgElement **out);

/**
 * `[g, h] = g^-1 h^-1 g h`.
 *
 * # Safety
 * `g` and `h` must be live handles; `out` must be valid for writes.
 */
int32_t tg_commutator(const struct TgElement *g, const struct TgElement *h, struct TgElement **out);

/**
 * Image of the word `word` (a string over `0`/`1`) under `g`.
 *
 * # Safety
 * `g` must be a live handle; `word` NUL-terminated; `out` valid for writes.
 */
int32_t tg_apply(const struct TgElement *g, const char *word, char **out);

/**
 * Label parity over the levels set in `level_mask` (bit `j` = level `j`).
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
int32_t tg_alpha(const struct TgElement *g, uint32_t level_mask, uint8_t *out);

/**
 * Whether two handles hold the same element.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
int32_t tg_equal(const struct TgElement *a, const struct TgElement *b, bool *out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void tg_free(struct TgElement *g);

/**
 * Hausdorff dimension `num/den` of the finitely constrained group defined
 * by the essential reduction of `P_J`, `J` given as a level mask.
 *
 * # Safety
 * `num` and `den` must be valid for writes.
 */
int32_t tg_pj_dimension(uint32_t depth, uint32_t level_mask, uint64_t *num, uint64_t *den);

/**
 * Classification report for every `P_J` of `G(depth)` as JSON. The report
 * is written even when a check fails, in which case `TG_CHECK_FAILED` is
 * returned.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t tg_classify_json(uint32_t depth, bool gf2, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void tg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEGRP_H */
