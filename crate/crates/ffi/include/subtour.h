#ifndef SUBTOUR_H
#define SUBTOUR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SubtourStatus {
  SUBTOUR_STATUS_OK = 0,
  SUBTOUR_STATUS_NULL_ARGUMENT = 1,
  SUBTOUR_STATUS_INVALID_UTF8 = 2,
  SUBTOUR_STATUS_PARSE = 3,
  SUBTOUR_STATUS_DOMAIN = 4,
  SUBTOUR_STATUS_INFEASIBLE = 5,
  SUBTOUR_STATUS_SCALE_LIMIT = 6,
  SUBTOUR_STATUS_INTERNAL = 7,
} SubtourStatus;

/**
 * Opaque graph handle.
 */
typedef struct SubtourGraph SubtourGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *subtour_last_error(void);

/**
 * Parses an edge-list document into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SubtourStatus subtour_graph_parse(const char *text, struct SubtourGraph **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from [`subtour_graph_parse`] and not be used afterwards.
 */
void subtour_graph_free(struct SubtourGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t subtour_graph_vertex_count(const struct SubtourGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t subtour_graph_edge_count(const struct SubtourGraph *g);

/**
 * Number of locked vertex sets.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum SubtourStatus subtour_locked_count(const struct SubtourGraph *g, size_t *out);

/**
 * JSON array of the locked sets, each `{U, eH, nH, mH}`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum SubtourStatus subtour_locked_json(const struct SubtourGraph *g, char **out);

/**
 * A description (`P-full`, `P-refined`, `P-minimal`, `Q`, `Q-prime`, `K`)
 * as JSON, or as LP text when `lp` is nonzero.
 *
 * # Safety
 * `g` must be a live handle, `kind` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum SubtourStatus subtour_describe(const struct SubtourGraph *g,
                                    const char *kind,
                                    int32_t lp,
                                    char **out);

/**
 * Subtour lower bound report as JSON. `weights_json` is a JSON array of
 * rationals, or null for the weights stored in the graph.
 *
 * # Safety
 * `g` must be a live handle, `weights_json` null or a NUL-terminated string,
 * and `out` a valid pointer.
 */
enum SubtourStatus subtour_bound(const struct SubtourGraph *g,
                                 const char *weights_json,
                                 char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void subtour_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBTOUR_H */
