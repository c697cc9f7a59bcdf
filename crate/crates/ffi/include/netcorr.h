#ifndef NETCORR_H
#define NETCORR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_UTF8 = 2,
  NC_STATUS_PARSE = 3,
  NC_STATUS_SELF_LOOP = 4,
  NC_STATUS_TOO_FEW_NODES = 5,
  NC_STATUS_DISCONNECTED = 6,
  NC_STATUS_NOT_SYMMETRIC = 7,
  NC_STATUS_INVALID_ARGUMENT = 8,
  NC_STATUS_ZERO_VARIANCE = 9,
  NC_STATUS_NEGATIVE_VARIANCE = 10,
  NC_STATUS_UNCERTIFIED = 11,
  NC_STATUS_INTERNAL = 12,
  NC_STATUS_PANIC = 13,
} NcStatus;

/**
 * Symmetric distance matrix with zero diagonal.
 */
typedef struct NcDistance NcDistance;

/**
 * Undirected simple graph.
 */
typedef struct NcGraph NcGraph;

/**
 * Spectral certificate of a weight or distance matrix.
 */
typedef struct NcVerdict NcVerdict;

/**
 * Symmetric weight matrix.
 */
typedef struct NcWeight NcWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nc_version(void);

/**
 * Message for the last failed call on this thread, or "" after a success.
 * Valid until the next `nc_*` call on the same thread.
 */
const char *nc_last_error_message(void);

/**
 * Parse an edge list: one `u v` pair per line, a single label declares an
 * isolated node, blank lines and lines starting with `#` are skipped.
 */
enum NcStatus nc_graph_parse(const char *text, struct NcGraph **out);

/**
 * G(n, p) with a deterministic seed. May be disconnected.
 */
enum NcStatus nc_graph_random(size_t n, double p, uint64_t seed, struct NcGraph **out);

enum NcStatus nc_graph_complete_bipartite(size_t a, size_t b, struct NcGraph **out);

/**
 * 0 for a null handle.
 */
size_t nc_graph_node_count(const struct NcGraph *g);

size_t nc_graph_edge_count(const struct NcGraph *g);

bool nc_graph_is_connected(const struct NcGraph *g);

void nc_graph_free(struct NcGraph *g);

/**
 * Hop-count distances. Fails with `DISCONNECTED` on a disconnected graph.
 */
enum NcStatus nc_distance_shortest_paths(const struct NcGraph *g, struct NcDistance **out);

enum NcStatus nc_distance_effective_resistance(const struct NcGraph *g, struct NcDistance **out);

/**
 * Euclidean distances between the rows of an `n x d` row-major array.
 */
enum NcStatus nc_distance_from_embedding(const double *coords,
                                         size_t n,
                                         size_t d,
                                         struct NcDistance **out);

size_t nc_distance_size(const struct NcDistance *d);

enum NcStatus nc_distance_get(const struct NcDistance *d, size_t i, size_t j, double *out);

void nc_distance_free(struct NcDistance *d);

/**
 * `W = exp(-k D)` entrywise; `k` must be finite and positive.
 */
enum NcStatus nc_weight_exp(const struct NcDistance *d, double k, struct NcWeight **out);

enum NcStatus nc_weight_identity(size_t n, struct NcWeight **out);

/**
 * Weight matrix from `n * n` row-major values. Must be symmetric.
 */
enum NcStatus nc_weight_from_values(const double *values, size_t n, struct NcWeight **out);

size_t nc_weight_size(const struct NcWeight *w);

void nc_weight_free(struct NcWeight *w);

/**
 * Certify `W` positive definite on the complement of the constant vector.
 * An invalid verdict is still `OK`; inspect it with `nc_verdict_is_valid`.
 */
enum NcStatus nc_certify_weight(const struct NcWeight *w, double rel_tol, struct NcVerdict **out);

/**
 * Certify that `D` is of negative type.
 */
enum NcStatus nc_certify_negative_type(const struct NcDistance *d,
                                       double rel_tol,
                                       struct NcVerdict **out);

bool nc_verdict_is_valid(const struct NcVerdict *v);

/**
 * Smallest eigenvalue other than the forced zero; NaN for a null handle.
 */
double nc_verdict_min_nonforced(const struct NcVerdict *v);

size_t nc_verdict_eigenvalue_count(const struct NcVerdict *v);

/**
 * Copy the eigenvalues, ascending, into `buf` (capacity `len`).
 */
enum NcStatus nc_verdict_eigenvalues(const struct NcVerdict *v, double *buf, size_t len);

/**
 * Copy the unit eigenvector of the smallest non-forced eigenvalue.
 */
enum NcStatus nc_verdict_min_eigenvector(const struct NcVerdict *v, double *buf, size_t len);

void nc_verdict_free(struct NcVerdict *v);

/**
 * Classical Pearson correlation of two length-`n` signals.
 */
enum NcStatus nc_pearson(const double *x, const double *y, size_t n, double *out);

/**
 * Network Pearson correlation under `w`. `v` must be the certificate of
 * `w`; an invalid certificate yields `UNCERTIFIED`.
 */
enum NcStatus nc_network_pearson(const struct NcWeight *w,
                                 const struct NcVerdict *v,
                                 const double *x,
                                 const double *y,
                                 size_t n,
                                 double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETCORR_H */
