/* SPDX-License-Identifier: Apache-2.0 */

#ifndef AGM_H
#define AGM_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum AgmStatus {
  AGM_STATUS_OK = 0,
  AGM_STATUS_NULL_POINTER = 1,
  AGM_STATUS_INVALID_ARGUMENT = 2,
  AGM_STATUS_PARSE_ERROR = 3,
  AGM_STATUS_IO_ERROR = 4,
  AGM_STATUS_CONTRACT_VIOLATION = 5,
  AGM_STATUS_ORDERING_VIOLATION = 6,
  AGM_STATUS_BUFFER_TOO_SMALL = 7,
  AGM_STATUS_PANIC = 8,
} AgmStatus;

typedef enum AgmPolicy {
  AGM_POLICY_BLOCK = 0,
  AGM_POLICY_CYCLIC = 1,
} AgmPolicy;

typedef enum AgmFormat {
  AGM_FORMAT_EDGE_LIST = 0,
  AGM_FORMAT_DIMACS = 1,
} AgmFormat;

typedef enum AgmSsspOrdering {
  AGM_SSSP_ORDERING_DIJKSTRA = 0,
  /**
   * Uses the `delta` argument as bucket width.
   */
  AGM_SSSP_ORDERING_DELTA = 1,
  AGM_SSSP_ORDERING_CHAOTIC = 2,
} AgmSsspOrdering;

typedef enum AgmBfsOrdering {
  AGM_BFS_ORDERING_LEVEL = 0,
  /**
   * Uses the `k` argument as level-group width.
   */
  AGM_BFS_ORDERING_KLA = 1,
} AgmBfsOrdering;

/**
 * Opaque graph handle.
 */
typedef struct AgmGraph AgmGraph;

/**
 * Opaque run result: the per-vertex values of the algorithm's output state plus stats.
 */
typedef struct AgmResult AgmResult;

/**
 * Engine settings. `max_phases == 0` means unbounded.
 */
typedef struct AgmRunOptions {
  uint32_t ranks;
  enum AgmPolicy policy;
  uint64_t seed;
  bool strict;
  uint64_t max_phases;
  bool parallel;
} AgmRunOptions;

/**
 * Totals over a finished run.
 */
typedef struct AgmStats {
  uint64_t phases;
  uint64_t productive_phases;
  uint64_t items_processed;
  uint64_t updates_applied;
  uint64_t updates_rejected;
  uint64_t remote_messages;
  uint64_t substeps;
  uint64_t monotonicity_violations;
  bool truncated;
  bool halted_by_observer;
} AgmStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *agm_last_error(void);

/**
 * Static name of a status code.
 */
const char *agm_status_name(enum AgmStatus status);

/**
 * Default options: one rank, block policy, seed 0, relaxed mode, no phase limit.
 */
struct AgmRunOptions agm_run_options_default(void);

/**
 * Builds a graph from `m` edges. `weights` may be NULL for an unweighted graph.
 */
enum AgmStatus agm_graph_from_edges(uint32_t n,
                                    const uint32_t *src,
                                    const uint32_t *dst,
                                    const double *weights,
                                    size_t m,
                                    bool directed,
                                    struct AgmGraph **out);

/**
 * Loads a graph file. `directed` and `weighted` apply to edge lists only.
 */
enum AgmStatus agm_graph_load(const char *path,
                              enum AgmFormat format,
                              bool directed,
                              bool weighted,
                              struct AgmGraph **out);

/**
 * Seeded Erdős–Rényi graph with weights uniform on `[lo, hi]`.
 */
enum AgmStatus agm_graph_generate(uint32_t n,
                                  double p,
                                  uint64_t seed,
                                  double lo,
                                  double hi,
                                  bool directed,
                                  struct AgmGraph **out);

/**
 * Vertex count, or 0 for NULL.
 */
size_t agm_graph_vertex_count(const struct AgmGraph *g);

/**
 * Stored (directed) edge count, or 0 for NULL. Undirected edges count twice.
 */
size_t agm_graph_edge_count(const struct AgmGraph *g);

void agm_graph_free(struct AgmGraph *g);

/**
 * Single-source shortest paths. Unreachable vertices hold `+inf`.
 */
enum AgmStatus agm_run_sssp(const struct AgmGraph *g,
                            uint32_t source,
                            enum AgmSsspOrdering ordering,
                            uint64_t delta,
                            const struct AgmRunOptions *opts,
                            struct AgmResult **out);

/**
 * Breadth-first levels. Unreachable vertices hold `+inf`.
 */
enum AgmStatus agm_run_bfs(const struct AgmGraph *g,
                           uint32_t source,
                           enum AgmBfsOrdering ordering,
                           uint64_t k,
                           const struct AgmRunOptions *opts,
                           struct AgmResult **out);

/**
 * PageRank. `iterative` selects the per-iteration class formulation with a
 * convergence observer; otherwise residual pushes ordered by descending residual.
 */
enum AgmStatus agm_run_pagerank(const struct AgmGraph *g,
                                double alpha,
                                double epsilon,
                                bool iterative,
                                const struct AgmRunOptions *opts,
                                struct AgmResult **out);

/**
 * Connected components of an undirected graph; labels are minimum vertex ids.
 */
enum AgmStatus agm_run_cc(const struct AgmGraph *g,
                          const struct AgmRunOptions *opts,
                          struct AgmResult **out);

/**
 * Number of per-vertex values, or 0 for NULL.
 */
size_t agm_result_len(const struct AgmResult *r);

/**
 * Copies the per-vertex values into `buf`, which must hold `agm_result_len` doubles.
 */
enum AgmStatus agm_result_values(const struct AgmResult *r, double *buf, size_t len);

enum AgmStatus agm_result_stats(const struct AgmResult *r, struct AgmStats *out);

void agm_result_free(struct AgmResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AGM_H */
