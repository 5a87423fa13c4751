#ifndef GRAPHLAB_H
#define GRAPHLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GRAPHLAB_AXIS_X 0

#define GRAPHLAB_AXIS_Y 1

#define GRAPHLAB_AXIS_Z 2

/**
 * Result code of every fallible call.
 */
typedef enum GraphlabStatus {
  GRAPHLAB_STATUS_OK = 0,
  GRAPHLAB_STATUS_NULL_POINTER = 1,
  GRAPHLAB_STATUS_INVALID_ARGUMENT = 2,
  GRAPHLAB_STATUS_PARSE = 3,
  GRAPHLAB_STATUS_TOO_MANY_QUBITS = 4,
  GRAPHLAB_STATUS_INTERNAL = 5,
} GraphlabStatus;

/**
 * Opaque weighted graph.
 */
typedef struct GraphlabGraph GraphlabGraph;

/**
 * Noise parameters for sampled estimates: readout bit-flip probability and
 * depolarizing error probabilities after one- and two-qubit gates.
 */
typedef struct GraphlabNoise {
  double readout_flip;
  double err_1q;
  double err_2q;
} GraphlabNoise;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; empty if none failed.
 */
const char *graphlab_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *graphlab_version(void);

/**
 * Parses a JSON graph document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum GraphlabStatus graphlab_graph_parse(const char *json, struct GraphlabGraph **out);

/**
 * Builds a graph from `n` vertex phases and `n_edges` edges. Edge `i` joins
 * `endpoints[2i]` and `endpoints[2i+1]` with coupling `theta[i]`.
 *
 * # Safety
 * `phi` must hold `n` values, `endpoints` `2 * n_edges`, `theta` `n_edges`.
 */
enum GraphlabStatus graphlab_graph_new(size_t n,
                                       const double *phi,
                                       size_t n_edges,
                                       const size_t *endpoints,
                                       const double *theta,
                                       struct GraphlabGraph **out);

/**
 * Star graph with center 0 and `leaves` leaves, uniform weights.
 *
 * # Safety
 * `out` must be writable.
 */
enum GraphlabStatus graphlab_graph_star(size_t leaves,
                                        double phi,
                                        double theta,
                                        struct GraphlabGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from a graphlab constructor and not be used afterwards.
 */
void graphlab_graph_free(struct GraphlabGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t graphlab_graph_num_vertices(const struct GraphlabGraph *g);

/**
 * Closed-form mean spin `<sigma^axis_l>`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum GraphlabStatus graphlab_pauli_mean(const struct GraphlabGraph *g,
                                        size_t l,
                                        uint32_t axis_code,
                                        double *out);

/**
 * Closed-form Bloch vector of vertex `l`, written as x, y, z into `out[0..3]`.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold three doubles.
 */
enum GraphlabStatus graphlab_bloch_vector(const struct GraphlabGraph *g, size_t l, double *out);

/**
 * Geometric measure of entanglement of vertex `l`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum GraphlabStatus graphlab_gme(const struct GraphlabGraph *g, size_t l, double *out);

/**
 * GME of a vertex of degree `degree` in a uniformly weighted graph.
 * A negative degree is an invalid argument.
 *
 * # Safety
 * `out` must be writable.
 */
enum GraphlabStatus graphlab_gme_uniform(double phi, double theta, int64_t degree, double *out);

/**
 * GME of the center of a five-vertex star: `phi[0]` is the center phase,
 * `phi[1..5]` the leaf phases, `theta[i]` the coupling to leaf `i + 1`.
 *
 * # Safety
 * `phi` must hold `n_phi` values, `theta` `n_theta`, and `out` be writable.
 */
enum GraphlabStatus graphlab_gme_star_center(const double *phi,
                                             size_t n_phi,
                                             const double *theta,
                                             size_t n_theta,
                                             double *out);

/**
 * Closed-form correlator `<sigma^a_l sigma^b_m>`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum GraphlabStatus graphlab_correlator(const struct GraphlabGraph *g,
                                        size_t l,
                                        size_t m,
                                        uint32_t a,
                                        uint32_t b,
                                        double *out);

/**
 * Correlator in a uniformly weighted graph. `deg_l` and `deg_m` count the
 * neighbors of each vertex other than its partner; `adjacent` is nonzero
 * when the two vertices share an edge.
 *
 * # Safety
 * `out` must be writable.
 */
enum GraphlabStatus graphlab_correlator_uniform(double phi,
                                                double theta,
                                                int64_t deg_l,
                                                int64_t deg_m,
                                                int32_t adjacent,
                                                uint32_t a,
                                                uint32_t b,
                                                double *out);

/**
 * Exact `<sigma^a_l sigma^b_m>` from the simulated statevector, `l != m`.
 * `max_qubits` of 0 selects the default cap.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum GraphlabStatus graphlab_exact_correlator(const struct GraphlabGraph *g,
                                              size_t l,
                                              size_t m,
                                              uint32_t a,
                                              uint32_t b,
                                              size_t max_qubits,
                                              double *out);

/**
 * Shot estimate of `<sigma^a_l sigma^b_m>`. With `noise` null the ideal
 * statevector is sampled; otherwise the transpiled circuit runs under the
 * given noise.
 *
 * # Safety
 * `g` must be a live handle, `noise` null or readable, `out` writable.
 */
enum GraphlabStatus graphlab_estimate_correlator(const struct GraphlabGraph *g,
                                                 size_t l,
                                                 size_t m,
                                                 uint32_t a,
                                                 uint32_t b,
                                                 uint64_t shots,
                                                 uint64_t seed,
                                                 const struct GraphlabNoise *noise,
                                                 double *out);

/**
 * Shot estimate of `<sigma^axis_l>`; `noise` as in
 * [`graphlab_estimate_correlator`].
 *
 * # Safety
 * `g` must be a live handle, `noise` null or readable, `out` writable.
 */
enum GraphlabStatus graphlab_estimate_pauli_mean(const struct GraphlabGraph *g,
                                                 size_t l,
                                                 uint32_t axis_code,
                                                 uint64_t shots,
                                                 uint64_t seed,
                                                 const struct GraphlabNoise *noise,
                                                 double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHLAB_H */
