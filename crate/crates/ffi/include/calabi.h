#ifndef CALABI_H
#define CALABI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum CalabiStatus {
  CALABI_STATUS_OK = 0,
  CALABI_STATUS_NULL_POINTER = 1,
  CALABI_STATUS_INVALID_UTF8 = 2,
  CALABI_STATUS_PARSE = 3,
  CALABI_STATUS_OUT_OF_RANGE = 4,
  CALABI_STATUS_DOMAIN = 5,
  CALABI_STATUS_INVALID_PARAMETER = 6,
  CALABI_STATUS_INTERNAL = 7,
} CalabiStatus;

// Verdict kinds reported by [`calabi_verdict_kind`].
typedef enum CalabiVerdictKind {
  CALABI_VERDICT_KIND_RESOLVABLE_UP_TO = 0,
  CALABI_VERDICT_KIND_CERTIFIED_NOT_RESOLVABLE = 1,
  CALABI_VERDICT_KIND_CERTIFIED_RESOLVABLE = 2,
} CalabiVerdictKind;

// Truncated real-analytic series in `z, z̄`.
typedef struct CalabiSeries CalabiSeries;

// Resolvability verdict together with the inputs that produced it.
typedef struct CalabiVerdict CalabiVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library from this thread.
const char *calabi_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void calabi_string_free(char *s);

// Parses a series in the text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CalabiStatus calabi_series_parse(const char *text, struct CalabiSeries **out);

// Builds a catalog model. `params` is `key=value` pairs separated by
// `;`, or null.
//
// # Safety
// String arguments must be null-terminated; `out` must be valid.
enum CalabiStatus calabi_model_build(const char *name,
                                     const char *params,
                                     uint32_t degree,
                                     struct CalabiSeries **out);

// # Safety
// `s` must be null or a handle from this library, freed at most once.
void calabi_series_free(struct CalabiSeries *s);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
uint32_t calabi_series_arity(const struct CalabiSeries *s);

// Truncation degree, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
uint32_t calabi_series_degree(const struct CalabiSeries *s);

// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum CalabiStatus calabi_series_to_text(const struct CalabiSeries *s, char **out);

// b-resolvability of `s` through `degree`; `b` is a `p/q` string.
//
// # Safety
// `s` must be a live handle, `b` NUL-terminated, `out` valid.
enum CalabiStatus calabi_analyze(const struct CalabiSeries *s,
                                 const char *b,
                                 uint32_t degree,
                                 struct CalabiVerdict **out);

// # Safety
// `v` must be null or a handle from this library, freed at most once.
void calabi_verdict_free(struct CalabiVerdict *v);

// # Safety
// `v` must be a live handle and `out` a valid pointer.
enum CalabiStatus calabi_verdict_kind(const struct CalabiVerdict *v, enum CalabiVerdictKind *out);

// Degree at which the verdict was reached: the truncation for a
// resolvable verdict, the witness degree otherwise.
//
// # Safety
// `v` must be a live handle and `out` a valid pointer.
enum CalabiStatus calabi_verdict_degree(const struct CalabiVerdict *v, uint32_t *out);

// Rank of a resolvable verdict; `-1` when unknown or not resolvable.
//
// # Safety
// `v` must be null or a live handle.
int64_t calabi_verdict_rank(const struct CalabiVerdict *v);

// Witness value `w* A w` as `p/q`.
//
// # Safety
// `v` must be a live handle and `out` a valid pointer.
enum CalabiStatus calabi_verdict_witness_value(const struct CalabiVerdict *v, char **out);

// Full JSON certificate, with the series embedded.
//
// # Safety
// `v` must be a live handle and `out` a valid pointer.
enum CalabiStatus calabi_verdict_json(const struct CalabiVerdict *v, char **out);

// Re-validates a JSON certificate. `valid` receives 1 or 0.
//
// # Safety
// `json` must be NUL-terminated and `valid` a valid pointer.
enum CalabiStatus calabi_check_certificate(const char *json, int *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CALABI_H */
