#ifndef HODGEKNOT_H
#define HODGEKNOT_H

/* This header is generated from the Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every ABI call.
typedef enum {
  // The call succeeded.
  HK_STATUS_OK = 0,
  // A required pointer argument was null.
  HK_STATUS_NULL_POINTER = 1,
  // An argument was malformed (bad name, bad size, bad fraction).
  HK_STATUS_INVALID_ARGUMENT = 2,
  // The computation itself failed; see `hk_last_error_message`.
  HK_STATUS_COMPUTATION_ERROR = 3,
  // The two computation routes disagreed during a cross-checked run.
  HK_STATUS_MISMATCH = 4,
  // The provided buffer cannot hold the result.
  HK_STATUS_BUFFER_TOO_SMALL = 5,
  // A panic was caught at the boundary.
  HK_STATUS_PANIC = 6,
} HkStatus;

// Opaque handle to a computed invariant report.
typedef struct HkReport HkReport;

// Opaque handle to a named Seifert matrix.
typedef struct HkSeifert HkSeifert;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message of the current thread, or null if none was
// recorded.  The pointer stays valid until the next failing call on
// the same thread.
const char *hk_last_error_message(void);

// Version of the underlying library as a static NUL-terminated string.
const char *hk_version(void);

// Look up a built-in example matrix by name (for example `"trefoil"`,
// `"8_20"` or `"torus(3,5)"`).
//
// # Safety
// `name` must be a valid NUL-terminated string and `out` a valid
// destination pointer.
HkStatus hk_seifert_by_name(const char *name, HkSeifert **out);

// Build a Seifert matrix from a row-major array of `size * size`
// integer entries.
//
// # Safety
// `name` must be NUL-terminated, `entries` must point to at least
// `size * size` values, and `out` must be a valid destination pointer.
HkStatus hk_seifert_from_integers(const char *name,
                                  size_t size,
                                  const int64_t *entries,
                                  HkSeifert **out);

// Number of rows of the matrix behind the handle.
//
// # Safety
// `seifert` must be a live handle and `out` a valid pointer.
HkStatus hk_seifert_size(const HkSeifert *seifert, size_t *out);

// Release a matrix handle; null is accepted and ignored.
//
// # Safety
// `seifert` must be null or a pointer produced by this library that
// has not been freed yet.
void hk_seifert_free(HkSeifert *seifert);

// Run the full invariant pipeline.  With `crosscheck` nonzero the two
// independent routes are compared and a disagreement reports
// `HK_STATUS_MISMATCH`.
//
// # Safety
// `seifert` must be a live handle and `out` a valid destination
// pointer.
HkStatus hk_report_compute(const HkSeifert *seifert, uint8_t crosscheck, HkReport **out);

// Release a report handle; null is accepted and ignored.
//
// # Safety
// `report` must be null or a pointer produced by this library that
// has not been freed yet.
void hk_report_free(HkReport *report);

// Serialize the report as deterministic pretty-printed JSON using the
// two-call pattern (see the module documentation).
//
// # Safety
// `report` must be a live handle; `buf` may be null when only the
// required size is requested through `needed`.
HkStatus hk_report_json(const HkReport *report, char *buf, size_t cap, size_t *needed);

// Canonical torsion-order polynomial of the report, as text.
//
// # Safety
// Same contract as [`hk_report_json`].
HkStatus hk_report_alexander(const HkReport *report, char *buf, size_t cap, size_t *needed);

// Minimal generator count of the torsion module.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
HkStatus hk_report_nakanishi_index(const HkReport *report, size_t *out);

// Rank of the split-off zero block found during reduction.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
HkStatus hk_report_zero_rank(const HkReport *report, size_t *out);

// Exact Tristram-Levine signature and nullity at the circle point
// with turn fraction `numer / denom`.
//
// # Safety
// `seifert` must be a live handle; `out_signature` and `out_nullity`
// must be valid pointers.
HkStatus hk_signature(const HkSeifert *seifert,
                      int64_t numer,
                      int64_t denom,
                      int64_t *out_signature,
                      size_t *out_nullity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HODGEKNOT_H */
