#ifndef RRFINITE_H
#define RRFINITE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum {
  RR_STATUS_OK = 0,
  RR_STATUS_NULL_POINTER = 1,
  RR_STATUS_INVALID_UTF8 = 2,
  RR_STATUS_PARSE = 3,
  RR_STATUS_LENGTH_MISMATCH = 4,
  RR_STATUS_INVALID_STRUCTURE = 5,
  RR_STATUS_INVALID_GRAPH = 6,
  RR_STATUS_INVALID_REGION = 7,
  RR_STATUS_PANIC = 8,
} RrStatus;

/**
 * Opaque handle to a validated Riemann-Roch structure.
 */
typedef struct RrStructure RrStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *rr_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rr_string_free(char *s);

/**
 * Parses a structure JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
RrStatus rr_structure_from_json(const char *json, RrStructure **out);

/**
 * Loads a built-in example by name (e.g. `"nongraph-sec4"`).
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
RrStatus rr_structure_from_example(const char *name, RrStructure **out);

/**
 * Builds the structure of a graph JSON document from a 1-based base vertex.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
RrStatus rr_structure_from_graph(const char *json, uint32_t base_vertex, RrStructure **out);

/**
 * Releases a structure handle. NULL is ignored.
 *
 * # Safety
 * `s` must come from an `rr_structure_*` constructor and not have been freed.
 */
void rr_structure_free(RrStructure *s);

/**
 * Dimension n of the structure, or 0 for a NULL handle.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uintptr_t rr_structure_dimension(const RrStructure *s);

/**
 * Canonical structure JSON.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
RrStatus rr_structure_to_json(const RrStructure *s, char **out);

/**
 * ℓ(point) as an exact rational string.
 *
 * # Safety
 * `s` must be a live handle, `point` a nul-terminated string, `out` writable.
 */
RrStatus rr_ell(const RrStructure *s, const char *point, char **out);

/**
 * ℓ(x) − ℓ(κ − x) − (deg x − g + 1) as an exact rational string.
 *
 * # Safety
 * `s` must be a live handle, `point` a nul-terminated string, `out` writable.
 */
RrStatus rr_residual(const RrStructure *s, const char *point, char **out);

/**
 * Whether κ − ν lies in 𝒩 for every ν-generator.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
RrStatus rr_verify_symmetry(const RrStructure *s, bool *out);

/**
 * Whether the degree hypotheses deg κ = 2g − 2 and deg ν = g − 1 hold.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
RrStatus rr_degree_hypotheses(const RrStructure *s, bool *out);

/**
 * Whether `point` lies in 𝒩.
 *
 * # Safety
 * `s` must be a live handle, `point` a nul-terminated string, `out` writable.
 */
RrStatus rr_in_n(const RrStructure *s, const char *point, bool *out);

/**
 * Whether x − y ∈ H.
 *
 * # Safety
 * `s` must be a live handle, `x` and `y` nul-terminated strings, `out` writable.
 */
RrStatus rr_equivalent(const RrStructure *s, const char *x, const char *y, bool *out);

/**
 * Samples ℓ on a grid and renders it. `bbox` is `lo..hi` or one interval per
 * axis separated by commas; `svg` selects SVG (n = 2 only) instead of CSV.
 *
 * # Safety
 * `s` must be a live handle, `bbox` a nul-terminated string, `out` writable.
 */
RrStatus rr_region(const RrStructure *s,
                   const char *bbox,
                   uint32_t resolution,
                   bool svg,
                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RRFINITE_H */
