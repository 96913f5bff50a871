/* C interface for the gorbit geodesic orbit analysis library. */

#ifndef GORBIT_H
#define GORBIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum GorbitStatus {
  GorbitStatus_Ok = 0,
  GorbitStatus_NullArgument = 1,
  GorbitStatus_ParseError = 2,
  GorbitStatus_ValidationError = 3,
  GorbitStatus_InvalidArgument = 4,
  GorbitStatus_Internal = 5,
} GorbitStatus;

// Geodesic orbit verdict codes.
typedef enum GorbitVerdict {
  GorbitVerdict_CertifiedNaturallyReductive = 0,
  GorbitVerdict_SampledGo = 1,
  GorbitVerdict_NotGo = 2,
} GorbitVerdict;

// Opaque handle to a parsed, validated metric reductive space.
typedef struct gorbit_space_t gorbit_space_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gorbit_version(void);

// Message for the most recent error on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *gorbit_last_error_message(void);

// Parses algebra-file JSON (`data`, `len` bytes) into a space handle.
//
// # Safety
// `data` must point to `len` readable bytes and `out` to a writable slot.
int gorbit_space_parse(const uint8_t *data, size_t len, struct gorbit_space_t **out);

// Releases a space handle. A null pointer is a no-op.
//
// # Safety
// `space` must come from [`gorbit_space_parse`] and not be used after.
void gorbit_space_free(struct gorbit_space_t *space);

// Releases a string returned by any report function.
//
// # Safety
// `s` must come from this library and not be used after.
void gorbit_string_free(char *s);

// Dimension of the underlying algebra, or -1 on a null handle.
//
// # Safety
// `space` must be a live handle or null.
int gorbit_space_dim(const struct gorbit_space_t *space);

// Dimension of the tangent complement, or -1 on a null handle.
//
// # Safety
// `space` must be a live handle or null.
int gorbit_space_tangent_dim(const struct gorbit_space_t *space);

// Structural analysis (series, radical, nilradical, spectrum, submodules)
// as a JSON string.
//
// # Safety
// `space` must be a live handle and `out_json` writable.
int gorbit_analyze_json(const struct gorbit_space_t *space, char **out_json);

// Geodesic orbit check; writes the verdict code and a JSON report.
//
// # Safety
// `space` must be a live handle; `out_verdict` and `out_json` writable.
int gorbit_go_check_json(const struct gorbit_space_t *space,
                         uint64_t samples,
                         uint64_t seed,
                         int *out_verdict,
                         char **out_json);

// Derivation-based check for two-step nilpotent metric algebras (the
// handle must carry trivial isotropy).
//
// # Safety
// `space` must be a live handle; `out_verdict` and `out_json` writable.
int gorbit_nil_go_check_json(const struct gorbit_space_t *space,
                             uint64_t samples,
                             uint64_t seed,
                             int *out_verdict,
                             char **out_json);

// Runs one audit suite (`strucrad1`, `strucnilr`, `skew`, `irred1`,
// `goodlevi`) and returns the JSON report.
//
// # Safety
// `space` must be a live handle, `suite` a NUL-terminated string,
// `out_json` writable.
int gorbit_audit_json(const struct gorbit_space_t *space,
                      const char *suite,
                      uint64_t samples,
                      uint64_t seed,
                      char **out_json);

// Builds a named example from a JSON request such as
// `{"kind": "u2_sphere", "alpha": "2"}` and returns algebra-file JSON
// that [`gorbit_space_parse`] accepts.
//
// # Safety
// `request_json` must be NUL-terminated and `out_json` writable.
int gorbit_construct_json(const char *request_json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GORBIT_H */
