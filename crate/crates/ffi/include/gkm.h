#ifndef GKM_H
#define GKM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum GkmStatus {
  GKM_STATUS_OK = 0,
  GKM_STATUS_NULL_ARGUMENT = 1,
  GKM_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed text: JSON, polynomial, direction, permutation or space name.
   */
  GKM_STATUS_PARSE = 3,
  /**
   * The document parsed but the graph breaks a GKM invariant.
   */
  GKM_STATUS_INVALID_GRAPH = 4,
  /**
   * Well-formed input refused: non-generic direction or index-increasing failure.
   */
  GKM_STATUS_REFUSAL = 5,
  /**
   * Any other library error.
   */
  GKM_STATUS_FAILED = 6,
  /**
   * A panic was caught at the boundary.
   */
  GKM_STATUS_PANIC = 7,
} GkmStatus;

/**
 * Opaque graph handle.
 */
typedef struct GkmGraphHandle GkmGraphHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a graph document; the graph must pass validation.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum GkmStatus gkm_graph_from_json(const char *json, struct GkmGraphHandle **out);

/**
 * Builds a named space such as `cpn:3` or `blowup_cp2`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` a valid pointer.
 */
enum GkmStatus gkm_graph_from_space(const char *spec, struct GkmGraphHandle **out);

/**
 * # Safety
 * `h` must come from this library and not be freed twice. Null is ignored.
 */
void gkm_graph_free(struct GkmGraphHandle *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum GkmStatus gkm_graph_vertex_count(const struct GkmGraphHandle *h, size_t *out);

/**
 * Rank of the torus.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum GkmStatus gkm_graph_dim(const struct GkmGraphHandle *h, size_t *out);

/**
 * Validation report as JSON.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum GkmStatus gkm_validate_json(const struct GkmGraphHandle *h, char **out);

/**
 * All canonical classes with Θ, the one-step graph and positivity, as JSON.
 * `xi` is comma-separated rationals, or null for the built-in direction.
 *
 * # Safety
 * `h` must be a live handle, `xi` null or a valid C string, `out` valid.
 */
enum GkmStatus gkm_canonical_table_json(const struct GkmGraphHandle *h, const char *xi, char **out);

/**
 * Θ by both methods, as JSON with an `agree` flag.
 *
 * # Safety
 * `h` must be a live handle, `xi` null or a valid C string, `out` valid.
 */
enum GkmStatus gkm_theta_json(const struct GkmGraphHandle *h, const char *xi, char **out);

/**
 * Solves for the canonical class of `vertex` from its defining conditions.
 * An infeasible system is a successful call whose JSON status is `Infeasible`.
 *
 * # Safety
 * `h` must be a live handle, `xi` null or a valid C string, `vertex` a
 * valid C string, `out` valid.
 */
enum GkmStatus gkm_solve_json(const struct GkmGraphHandle *h,
                              const char *xi,
                              const char *vertex,
                              char **out);

/**
 * Subword-formula restriction of the Schubert class of `sigma` at `mu`,
 * as polynomial text. Permutations are one-line, e.g. `"231"` or `"2,3,1"`.
 *
 * # Safety
 * `sigma` and `mu` must be valid C strings and `out` a valid pointer.
 */
enum GkmStatus gkm_billey(const char *sigma, const char *mu, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void gkm_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *gkm_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GKM_H */
