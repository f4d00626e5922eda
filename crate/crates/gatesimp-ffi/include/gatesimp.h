#ifndef GATESIMP_H
#define GATESIMP_H

/* Generated by cbindgen from gatesimp-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum GatesimpStatus {
  GATESIMP_STATUS_OK = 0,
  /**
   * A panic was caught at the ABI boundary.
   */
  GATESIMP_STATUS_INTERNAL = 1,
  GATESIMP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A discovery self-check or verification reported violations.
   */
  GATESIMP_STATUS_VERIFICATION = 3,
  /**
   * A size or budget guard refused the operation.
   */
  GATESIMP_STATUS_RESOURCE = 4,
  GATESIMP_STATUS_PARSE = 5,
  GATESIMP_STATUS_IO = 6,
  GATESIMP_STATUS_NULL_POINTER = 7,
} GatesimpStatus;

/**
 * Discovery method selector.
 */
typedef enum GatesimpMethod {
  GATESIMP_METHOD_SC = 0,
  GATESIMP_METHOD_FS = 1,
  GATESIMP_METHOD_EXACT = 2,
} GatesimpMethod;

/**
 * How a query was answered.
 */
typedef enum GatesimpRoute {
  GATESIMP_ROUTE_LOCAL = 0,
  GATESIMP_ROUTE_VIA_GATES = 1,
  GATESIMP_ROUTE_UNREACHABLE = 2,
} GatesimpRoute;

/**
 * A weighted gate graph tied to the epsilon it was built at.
 */
typedef struct GatesimpGateGraph GatesimpGateGraph;

/**
 * A discovered gate-vertex set or k-skip cover.
 */
typedef struct GatesimpGateSet GatesimpGateSet;

/**
 * An immutable unweighted undirected graph plus its label table.
 */
typedef struct GatesimpGraph GatesimpGraph;

/**
 * Basic distance statistics of a graph.
 */
typedef struct GatesimpGraphStats {
  size_t n;
  size_t m;
  uint32_t diameter;
  double avg_dist;
  size_t components;
  /**
   * False when the figures come from sampled BFS sources.
   */
  bool exact;
} GatesimpGraphStats;

/**
 * Result of a distance query. `distance` is meaningful unless the route
 * is unreachable; the witness fields are meaningful only for via-gates
 * routes.
 */
typedef struct GatesimpQueryResult {
  enum GatesimpRoute route;
  uint32_t distance;
  size_t witness_x;
  size_t witness_y;
} GatesimpQueryResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gatesimp_last_error(void);

/**
 * Loads an edge-list file (two whitespace-separated labels per line, `#`
 * comments). Labels are densified to ids 0..n in first-appearance order.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string; `out` must be a valid
 * pointer.
 */
enum GatesimpStatus gatesimp_graph_load_file(const char *path, struct GatesimpGraph **out);

/**
 * Parses edge-list text from a NUL-terminated UTF-8 buffer.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid.
 */
enum GatesimpStatus gatesimp_graph_from_edge_list(const char *text, struct GatesimpGraph **out);

/**
 * Seeded Erdős–Rényi graph with round(density * n) edges.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_graph_gen_er(size_t n,
                                          double density,
                                          uint64_t seed,
                                          struct GatesimpGraph **out);

/**
 * Seeded preferential-attachment scale-free graph.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_graph_gen_scale_free(size_t n,
                                                  double density,
                                                  uint64_t seed,
                                                  struct GatesimpGraph **out);

/**
 * # Safety
 * `g` must be a handle from this library, not yet freed; passing null is
 * a no-op.
 */
void gatesimp_graph_free(struct GatesimpGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t gatesimp_graph_vertex_count(const struct GatesimpGraph *g);

/**
 * Undirected edge count (each edge counted once).
 *
 * # Safety
 * `g` must be a live graph handle.
 */
size_t gatesimp_graph_edge_count(const struct GatesimpGraph *g);

/**
 * Resolves a vertex label to its dense id; returns false when unknown.
 *
 * # Safety
 * `g` and `label` must be valid; `out` must be a valid pointer.
 */
bool gatesimp_graph_vertex_id(const struct GatesimpGraph *g, const char *label, size_t *out);

/**
 * Diameter, mean pairwise distance, and component count. Exact when the
 * graph fits the all-pairs guard, sampled otherwise.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_graph_stats(const struct GatesimpGraph *g,
                                         struct GatesimpGraphStats *out);

/**
 * Discovers a gate-vertex set at `epsilon` with SC (set-cover greedy) or
 * FS (degree-ordered adaptive sampling). `self_check` re-validates the
 * cover before returning.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_discover_gates(const struct GatesimpGraph *g,
                                            uint32_t epsilon,
                                            enum GatesimpMethod method,
                                            bool self_check,
                                            struct GatesimpGateSet **out);

/**
 * Discovers a k-skip cover with SC or the exact branch-and-bound solver.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_discover_kskip(const struct GatesimpGraph *g,
                                            uint32_t k,
                                            enum GatesimpMethod method,
                                            bool self_check,
                                            struct GatesimpGateSet **out);

/**
 * # Safety
 * `s` must be a handle from this library, not yet freed; null is a no-op.
 */
void gatesimp_gateset_free(struct GatesimpGateSet *s);

/**
 * # Safety
 * `s` must be a live gate-set handle.
 */
size_t gatesimp_gateset_size(const struct GatesimpGateSet *s);

/**
 * Copies up to `cap` gate vertex ids (ascending) into `buf`; stores the
 * full set size in `written` so callers can size a second call.
 *
 * # Safety
 * `s` must be a live handle; `buf` must point to at least `cap` elements
 * unless `cap` is 0.
 */
enum GatesimpStatus gatesimp_gateset_vertices(const struct GatesimpGateSet *s,
                                              size_t *buf,
                                              size_t cap,
                                              size_t *written);

/**
 * Builds the local-gate graph of a gate-mode set, optionally applying the
 * distance-preserving edge sparsification.
 *
 * # Safety
 * Both handles must be live; `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_gategraph_build(const struct GatesimpGraph *g,
                                             const struct GatesimpGateSet *gates,
                                             bool apply_sparsify,
                                             struct GatesimpGateGraph **out);

/**
 * # Safety
 * `gg` must be a handle from this library, not yet freed; null is a no-op.
 */
void gatesimp_gategraph_free(struct GatesimpGateGraph *gg);

/**
 * # Safety
 * `gg` must be a live gate-graph handle.
 */
size_t gatesimp_gategraph_edge_count(const struct GatesimpGateGraph *gg);

/**
 * Answers one exact distance query: local pairs directly, non-local pairs
 * through the gate graph.
 *
 * # Safety
 * All handles must be live; `out` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_query(const struct GatesimpGraph *g,
                                   const struct GatesimpGateSet *gates,
                                   const struct GatesimpGateGraph *gg,
                                   size_t u,
                                   size_t v,
                                   struct GatesimpQueryResult *out);

/**
 * Answers `count` queries with one shared gate-graph preprocessing pass;
 * `us`, `vs`, and `out` must each hold `count` elements.
 *
 * # Safety
 * All handles must be live and the three arrays valid for `count`
 * elements.
 */
enum GatesimpStatus gatesimp_query_batch(const struct GatesimpGraph *g,
                                         const struct GatesimpGateSet *gates,
                                         const struct GatesimpGateGraph *gg,
                                         const size_t *us,
                                         const size_t *vs,
                                         struct GatesimpQueryResult *out,
                                         size_t count);

/**
 * Re-validates a discovered set against its defining cover condition
 * (gate local condition, or k-skip condition). Sets `*pass` and returns
 * Ok even when validation fails; the status reports only operational
 * errors.
 *
 * # Safety
 * Both handles must be live; `pass` must be a valid pointer.
 */
enum GatesimpStatus gatesimp_verify_cover(const struct GatesimpGraph *g,
                                          const struct GatesimpGateSet *gates,
                                          bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GATESIMP_H */
