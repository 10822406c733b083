#ifndef SLICENESS_H
#define SLICENESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_PARSE = 3,
  SL_STATUS_INVALID_MATRIX = 4,
  SL_STATUS_INFINITE_COVER = 5,
  SL_STATUS_BOUND_EXCEEDED = 6,
  SL_STATUS_NOT_EXACT = 7,
  SL_STATUS_COMPUTE = 8,
  SL_STATUS_PANIC = 9,
} SlStatus;

// Opaque knot handle.
typedef struct SlKnot SlKnot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Free with
// `sl_string_free`.
char *sl_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library.
void sl_string_free(char *s);

// Knot from a row-major `n×n` Seifert matrix.
//
// # Safety
// `entries` must point to `n*n` values; `out` must be writable.
enum SlStatus sl_knot_from_matrix(const int64_t *entries, size_t n, struct SlKnot **out);

// Knot by name from the bundled library, or from `json` (a knot file
// merged over the library) when `json` is not null.
//
// # Safety
// `name` must be a nul-terminated string, `json` null or nul-terminated,
// `out` writable.
enum SlStatus sl_knot_from_library(const char *name, const char *json, struct SlKnot **out);

// # Safety
// `k` must be null or a handle from this library, not yet freed.
void sl_knot_free(struct SlKnot *k);

// Normalized Alexander polynomial as text. Free with `sl_string_free`.
//
// # Safety
// `k` must be a live handle and `out` writable.
enum SlStatus sl_alexander(const struct SlKnot *k, char **out);

// # Safety
// `k` must be a live handle and `out` writable.
enum SlStatus sl_arf(const struct SlKnot *k, int32_t *out);

// Levine–Tristram signature at `e^{2πi p/q}`.
//
// # Safety
// `k` must be a live handle and `out` writable.
enum SlStatus sl_signature_at(const struct SlKnot *k, int64_t p, int64_t q, int64_t *out);

// Exact circle integral of the signature as `num/den`; `SL_STATUS_NOT_EXACT`
// when only an enclosure is available.
//
// # Safety
// `k` must be a live handle, `num` and `den` writable.
enum SlStatus sl_signature_integral(const struct SlKnot *k, int64_t *num, int64_t *den);

// `|H_1(L_k)|`.
//
// # Safety
// `k` must be a live handle and `out` writable.
enum SlStatus sl_cover_order(const struct SlKnot *k, uint32_t level, uint64_t *out);

// Number of metabolizers of the linking form on `H_1(L_k)`.
//
// # Safety
// `k` must be a live handle and `out` writable.
enum SlStatus sl_metabolizer_count(const struct SlKnot *k, uint32_t level, size_t *out);

// Runs the obstruction pipeline (`mode` is `slice`, `ribbon`, `tensor` or
// `doubly`) at the default levels and bounds. Writes the JSON report and
// the exit code (0 none, 2 obstruction certified).
//
// # Safety
// `k` must be a live handle, `mode` nul-terminated, outputs writable.
enum SlStatus sl_obstruct_json(const struct SlKnot *k,
                               const char *mode,
                               char **out_json,
                               int32_t *out_code);

// Reproduces canned example `n` (1 to 5); `out_passed` is 1 when every
// comparison passes or matches a recorded discrepancy.
//
// # Safety
// Outputs must be writable.
enum SlStatus sl_reproduce_json(uint32_t n, char **out_json, int32_t *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLICENESS_H */
