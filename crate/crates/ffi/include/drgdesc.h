#ifndef DRGDESC_H
#define DRGDESC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum DrgStatus {
  DrgStatus_Ok = 0,
  DrgStatus_NullPointer = 1,
  DrgStatus_InvalidArgument = 2,
  DrgStatus_BudgetExceeded = 3,
  DrgStatus_NotDistanceRegular = 4,
  DrgStatus_NotQPolynomial = 5,
  DrgStatus_CheckFailed = 6,
  DrgStatus_Utf8Error = 7,
} DrgStatus;

/**
 * Opaque graph handle: a verified distance-regular graph plus its cached
 * scheme analysis (built on first use).
 */
typedef struct DrgGraph DrgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent error message on this thread; caller frees with
 * [`drg_string_free`]. Never null.
 */
char *drg_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a drgdesc function and not yet freed.
 */
void drg_string_free(char *s);

/**
 * Builds a family graph. `family` is one of `hamming`, `johnson`, `doob`,
 * `halved_cube`, `grassmann`, `bilinear_forms`; `params` points to
 * `nparams` integers in constructor order.
 *
 * # Safety
 * `family` must be a NUL-terminated string, `params` must point to
 * `nparams` readable values, and `out` must be a writable pointer slot.
 */
enum DrgStatus drg_graph_new_family(const char *family,
                                    const int64_t *params,
                                    uintptr_t nparams,
                                    struct DrgGraph **out);

/**
 * Parses a graph from the JSON exchange format and fully re-verifies
 * distance-regularity.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` a writable pointer slot.
 */
enum DrgStatus drg_graph_from_json(const char *json, struct DrgGraph **out);

/**
 * Releases a graph handle.
 *
 * # Safety
 * `g` must have come from a drgdesc constructor and not yet be freed.
 */
void drg_graph_free(struct DrgGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
uintptr_t drg_graph_vertex_count(const struct DrgGraph *g);

/**
 * Diameter; 0 for a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
uintptr_t drg_graph_diameter(const struct DrgGraph *g);

/**
 * Graph in the JSON exchange format.
 *
 * # Safety
 * `g` must be a live handle; `out` a writable pointer slot.
 */
enum DrgStatus drg_graph_to_json(const struct DrgGraph *g, char **out);

/**
 * Scheme analysis (eigenvalues, multiplicities, Krein parameters,
 * Q-polynomial orderings, classical parameters, fitted array) as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` a writable pointer slot.
 */
enum DrgStatus drg_analyze_json(const struct DrgGraph *g, char **out);

/**
 * Enumerates descendents; `mode` may be null or `auto` for the default
 * (exhaustive under the subset cap, classified forms for family graphs).
 *
 * # Safety
 * `g` must be a live handle, `mode` null or NUL-terminated, `out` writable.
 */
enum DrgStatus drg_descendents_json(const struct DrgGraph *g,
                                    const char *mode,
                                    uint64_t budget,
                                    uint32_t threads,
                                    char **out);

/**
 * Quantum-matroid report over the descendent family.
 *
 * # Safety
 * Same contract as [`drg_descendents_json`].
 */
enum DrgStatus drg_qmatroid_json(const struct DrgGraph *g,
                                 const char *mode,
                                 uint64_t budget,
                                 uint32_t threads,
                                 char **out);

/**
 * Full verification report. Returns `Ok` with the report JSON even when
 * checks fail; `passed` inside the report carries the verdict.
 *
 * # Safety
 * Same contract as [`drg_descendents_json`].
 */
enum DrgStatus drg_verify_all_json(const struct DrgGraph *g,
                                   const char *mode,
                                   uint64_t budget,
                                   uint32_t threads,
                                   uint32_t samples,
                                   char **out);

/**
 * Fitted Leonard parameter array of the graph (case, scalars, expansion).
 *
 * # Safety
 * `g` must be a live handle; `out` a writable pointer slot.
 */
enum DrgStatus drg_leonard_fit_json(const struct DrgGraph *g, char **out);

/**
 * Expands a parameter array (JSON in, JSON out).
 *
 * # Safety
 * `array_json` must be NUL-terminated; `out` a writable pointer slot.
 */
enum DrgStatus drg_leonard_expand_json(const char *array_json, char **out);

/**
 * Transforms an array into the array of its rho-descendent.
 *
 * # Safety
 * `array_json` must be NUL-terminated; `out` a writable pointer slot.
 */
enum DrgStatus drg_leonard_descend_json(const char *array_json,
                                        uint32_t d_prime,
                                        uint32_t rho,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DRGDESC_H */
