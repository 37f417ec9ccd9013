#ifndef ISOGROWTH_H
#define ISOGROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsoStatus {
  ISO_STATUS_OK = 0,
  ISO_STATUS_NULL_POINTER = 1,
  ISO_STATUS_INVALID_ARGUMENT = 2,
  ISO_STATUS_MARGIN = 3,
  ISO_STATUS_PARSE = 4,
  ISO_STATUS_IO = 5,
  ISO_STATUS_OUT_OF_RANGE = 6,
  ISO_STATUS_UNVERIFIED_PINCH = 7,
  ISO_STATUS_RESOURCE_LIMIT = 8,
  ISO_STATUS_FAILED = 9,
  ISO_STATUS_PANIC = 10,
} IsoStatus;

/**
 * Opaque graph handle.
 */
typedef struct IsoGraph IsoGraph;

typedef struct IsoSetAnalysis {
  size_t size;
  size_t boundary_size;
  /**
   * `|∂A|·ln(2+|A|)/|A|`; NaN for the empty set.
   */
  double eii_ratio;
} IsoSetAnalysis;

typedef struct IsoPinch {
  double a;
  double c;
  uint32_t r_max;
  size_t sample_size;
  size_t violations;
  size_t equalities;
} IsoPinch;

typedef struct IsoCertificate {
  uint32_t radius;
  size_t set_size;
  size_t boundary_size;
  double z;
  double z_direct;
  double max_z_u;
  double kappa1;
  double beta;
  bool lower_ok;
  bool upper_ok;
} IsoCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *iso_last_error(void);

/**
 * Materializes the ball of radius `radius` around the family's default root.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum IsoStatus iso_graph_materialize(const char *spec, uint32_t radius, struct IsoGraph **out);

/**
 * Reads an edge-list file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum IsoStatus iso_graph_read(const char *path, struct IsoGraph **out);

/**
 * Frees a handle; null is a no-op.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void iso_graph_free(struct IsoGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IsoStatus iso_graph_vertex_count(const struct IsoGraph *g, size_t *out);

/**
 * Index of the truncation root.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IsoStatus iso_graph_root(const struct IsoGraph *g, uint32_t *out);

/**
 * # Safety
 * `g` must be a live handle, `id` NUL-terminated, `out` writable.
 */
enum IsoStatus iso_graph_index_of(const struct IsoGraph *g, const char *id, uint32_t *out);

/**
 * Canonical id string of vertex `v`; release it with [`iso_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IsoStatus iso_graph_vertex_id(const struct IsoGraph *g, uint32_t v, char **out);

/**
 * # Safety
 * `s` must come from [`iso_graph_vertex_id`] or be null.
 */
void iso_string_free(char *s);

/**
 * Writes `|B(v, r)|` for `r = 0..=r_max` into `out[0..=r_max]`.
 *
 * # Safety
 * `g` must be a live handle; `out` must hold `out_len` elements.
 */
enum IsoStatus iso_ball_sizes(const struct IsoGraph *g,
                              uint32_t v,
                              uint32_t r_max,
                              size_t *out,
                              size_t out_len);

/**
 * # Safety
 * `g` must be a live handle; `set` must hold `len` indices; `out` writable.
 */
enum IsoStatus iso_boundary_size(const struct IsoGraph *g,
                                 const uint32_t *set,
                                 size_t len,
                                 size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `set` must hold `len` indices; `out` writable.
 */
enum IsoStatus iso_analyze_set(const struct IsoGraph *g,
                               const uint32_t *set,
                               size_t len,
                               struct IsoSetAnalysis *out);

/**
 * Fits `(a, c)` on the stratified sample of exact balls up to `r_max`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IsoStatus iso_pinch_fit(const struct IsoGraph *g, uint32_t r_max, struct IsoPinch *out);

/**
 * `phi(n)` anchored at the truncation root.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IsoStatus iso_phi(const struct IsoGraph *g, size_t n, uint32_t *out);

/**
 * `⌊a^R / (2c)⌋`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IsoStatus iso_finite_applicability(double a, double c, uint32_t radius, uint64_t *out);

/**
 * Z-certificate summary for the set under constants `(a, c)`.
 *
 * # Safety
 * `g` must be a live handle; `set` must hold `len` indices; `out` writable.
 */
enum IsoStatus iso_certificate(const struct IsoGraph *g,
                               const uint32_t *set,
                               size_t len,
                               double a,
                               double c,
                               struct IsoCertificate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOGROWTH_H */
