#ifndef SBMCD_H
#define SBMCD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SbmcdStatus {
  SBMCD_STATUS_OK = 0,
  SBMCD_STATUS_NULL_POINTER = 1,
  SBMCD_STATUS_INVALID_PARAMETER = 2,
  SBMCD_STATUS_PARSE_ERROR = 3,
  SBMCD_STATUS_INVALID_INPUT = 4,
  SBMCD_STATUS_SIZE_CAP_EXCEEDED = 5,
  SBMCD_STATUS_INVALID_STATE = 6,
  SBMCD_STATUS_IO_ERROR = 7,
  SBMCD_STATUS_PANIC = 8,
} SbmcdStatus;

/**
 * Which query rule [`sbmcd_query_loop`] uses.
 */
typedef enum SbmcdStrategy {
  SBMCD_STRATEGY_ACTIVE = 0,
  SBMCD_STRATEGY_RANDOM = 1,
} SbmcdStrategy;

/**
 * A graph, optionally with ground-truth labels.
 */
typedef struct SbmcdGraph SbmcdGraph;

/**
 * Outcome of a query loop.
 */
typedef struct SbmcdRun SbmcdRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *sbmcd_last_error_message(void);

/**
 * Builds a graph on `n` nodes from `n_edges` pairs stored as
 * `edges[2k], edges[2k + 1]`. Self-loops and duplicates are dropped.
 * `labels` (length `n`, values below `r`) may be null when there is no
 * ground truth, in which case `r` is ignored.
 *
 * # Safety
 * `edges` must point to `2 * n_edges` values and `labels`, if non-null, to `n`.
 */
enum SbmcdStatus sbmcd_graph_from_edges(size_t n,
                                        const size_t *edges,
                                        size_t n_edges,
                                        const size_t *labels,
                                        size_t r,
                                        struct SbmcdGraph **out);

/**
 * Samples a stochastic block model graph together with its planted labels.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SbmcdStatus sbmcd_graph_sample(size_t n,
                                    size_t r,
                                    double p,
                                    double q,
                                    uint64_t seed,
                                    struct SbmcdGraph **out);

/**
 * Reads an edge list and a label file. `r == 0` infers the label count.
 *
 * # Safety
 * Paths must be NUL-terminated strings; `out` must be a valid pointer.
 */
enum SbmcdStatus sbmcd_graph_read(const char *edges_path,
                                  const char *labels_path,
                                  size_t r,
                                  struct SbmcdGraph **out);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t sbmcd_graph_node_count(const struct SbmcdGraph *graph);

/**
 * Number of distinct edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t sbmcd_graph_edge_count(const struct SbmcdGraph *graph);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void sbmcd_graph_free(struct SbmcdGraph *graph);

/**
 * Relax-and-round with `n_pins` supervised nodes; writes one label per node
 * into `labels_out` (length = node count).
 *
 * # Safety
 * `pin_nodes` and `pin_labels` must hold `n_pins` values; `labels_out` must
 * have room for every node.
 */
enum SbmcdStatus sbmcd_semi_supervised(const struct SbmcdGraph *graph,
                                       double p,
                                       double q,
                                       size_t r,
                                       const size_t *pin_nodes,
                                       const size_t *pin_labels,
                                       size_t n_pins,
                                       uint64_t seed,
                                       size_t *labels_out);

/**
 * Runs `budget` queries against the graph's ground truth and a final
 * semi-supervised solve. The graph must carry labels.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum SbmcdStatus sbmcd_query_loop(const struct SbmcdGraph *graph,
                                  double p,
                                  double q,
                                  size_t budget,
                                  enum SbmcdStrategy strategy,
                                  uint64_t seed,
                                  struct SbmcdRun **out);

/**
 * Accuracy on the non-queried nodes, or NaN for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
double sbmcd_run_accuracy(const struct SbmcdRun *run);

/**
 * Number of queries made, or 0 for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t sbmcd_run_query_count(const struct SbmcdRun *run);

/**
 * Copies the queried nodes and their revealed labels, in query order, into
 * arrays of length `capacity` (which must be at least the query count).
 *
 * # Safety
 * Both output arrays must have room for `capacity` values.
 */
enum SbmcdStatus sbmcd_run_queries(const struct SbmcdRun *run,
                                   size_t *nodes_out,
                                   size_t *labels_out,
                                   size_t capacity);

/**
 * Copies the final label of every node into `labels_out` (length `capacity`).
 *
 * # Safety
 * `labels_out` must have room for `capacity` values.
 */
enum SbmcdStatus sbmcd_run_labels(const struct SbmcdRun *run, size_t *labels_out, size_t capacity);

/**
 * Releases a run. Null is ignored.
 *
 * # Safety
 * `run` must be null or a handle not yet freed.
 */
void sbmcd_run_free(struct SbmcdRun *run);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBMCD_H */
