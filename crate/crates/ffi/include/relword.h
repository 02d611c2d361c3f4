#ifndef RELWORD_H
#define RELWORD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RwStatus {
  RW_STATUS_OK = 0,
  RW_STATUS_NULL_ARGUMENT = 1,
  RW_STATUS_INVALID_WORD = 2,
  RW_STATUS_INVALID_SCHEME = 3,
  RW_STATUS_OUT_OF_RANGE = 4,
  RW_STATUS_NOT_APPLICABLE = 5,
  RW_STATUS_INVALID_UTF8 = 6,
  RW_STATUS_BUFFER_TOO_SMALL = 7,
  RW_STATUS_INTERNAL = 99,
} RwStatus;

typedef enum RwVerdict {
  RW_VERDICT_YES = 0,
  RW_VERDICT_NO = 1,
  RW_VERDICT_UNKNOWN = 2,
} RwVerdict;

/**
 * A scheme with one insertion and one deletion rule.
 */
typedef struct RwScheme RwScheme;

/**
 * A relational word.
 */
typedef struct RwWord RwWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *rw_last_error(void);

/**
 * Build a word of length `n` from `n * n` row-major cells, each 0 (NEQ),
 * 1 (EQ) or 2 (undefined).
 *
 * # Safety
 * `cells` must point to `n * n` readable bytes (or be null when `n` is 0);
 * `out` must be writable.
 */
enum RwStatus rw_word_from_matrix(const uint8_t *cells, size_t n, struct RwWord **out);

/**
 * The fully defined word of a letter string: equal letters are equal.
 *
 * # Safety
 * `letters` must be a NUL-terminated string; `out` must be writable.
 */
enum RwStatus rw_word_from_string(const char *letters, struct RwWord **out);

/**
 * # Safety
 * `w` must be a live handle or null.
 */
size_t rw_word_len(const struct RwWord *w);

/**
 * Relation between positions `i` and `j` (1-based) as 0, 1 or 2.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum RwStatus rw_word_cell(const struct RwWord *w, size_t i, size_t j, uint8_t *out);

/**
 * 1 if the words are equal, 0 if not, -1 if either is null.
 *
 * # Safety
 * Both arguments must be live handles or null.
 */
int rw_word_equals(const struct RwWord *a, const struct RwWord *b);

/**
 * 1 if every pair of positions is defined, 0 if not, -1 for null.
 *
 * # Safety
 * `w` must be a live handle or null.
 */
int rw_word_is_fully_defined(const struct RwWord *w);

/**
 * Write the matrix text (digit rows, `ε` for the empty word) into `buf`,
 * NUL-terminated. `needed` receives the buffer size required, terminator
 * included; a too-small buffer gives `BufferTooSmall` and is left alone.
 *
 * # Safety
 * `buf` must have `cap` writable bytes (or be null with `cap` 0);
 * `needed` must be writable or null.
 */
enum RwStatus rw_word_to_text(const struct RwWord *w, char *buf, size_t cap, size_t *needed);

/**
 * # Safety
 * `w` must be a handle from this library, not yet freed, or null.
 */
void rw_word_free(struct RwWord *w);

/**
 * A scheme from insertion and deletion letter strings of lengths 3/2 or
 * 2/3, e.g. `"aba"` and `"ab"`.
 *
 * # Safety
 * `ins` and `del` must be NUL-terminated strings; `out` must be writable.
 */
enum RwStatus rw_scheme_new(const char *ins, const char *del, struct RwScheme **out);

/**
 * # Safety
 * `s` must be a handle from this library, not yet freed, or null.
 */
void rw_scheme_free(struct RwScheme *s);

/**
 * Insert the scheme's insertion rule after the first `k` positions.
 *
 * # Safety
 * `w` and `s` must be live handles; `out` must be writable.
 */
enum RwStatus rw_insert(const struct RwWord *w,
                        const struct RwScheme *s,
                        size_t k,
                        struct RwWord **out);

/**
 * Delete the scheme's deletion rule at window `k` (1-based).
 *
 * # Safety
 * `w` and `s` must be live handles; `out` must be writable.
 */
enum RwStatus rw_delete(const struct RwWord *w,
                        const struct RwScheme *s,
                        size_t k,
                        struct RwWord **out);

/**
 * Is the fully defined word `w` derivable from ε? A zero budget field
 * takes the library default.
 *
 * # Safety
 * `s` and `w` must be live handles; `verdict` must be writable; `states`
 * must be writable or null.
 */
enum RwStatus rw_decide(const struct RwScheme *s,
                        const struct RwWord *w,
                        size_t max_len,
                        size_t max_depth,
                        enum RwVerdict *verdict,
                        size_t *states);

/**
 * Derive ε from `w`; `steps` receives the derivation's length.
 *
 * # Safety
 * `s` and `w` must be live handles; `steps` must be writable.
 */
enum RwStatus rw_delete_word(const struct RwScheme *s, const struct RwWord *w, size_t *steps);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELWORD_H */
