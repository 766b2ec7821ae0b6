#ifndef GMALG_H
#define GMALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Built-in context families.
 */
typedef enum GmalgBuilder {
  /**
   * `M_n` split with an `k×k` corner.
   */
  GMALG_BUILDER_FULL_MATRIX = 0,
  /**
   * Upper triangular `T_n` split with an `k×k` corner.
   */
  GMALG_BUILDER_TRIANGULAR = 1,
} GmalgBuilder;

/**
 * Outcome of a call. Numeric values match the command-line exit codes where they overlap.
 */
typedef enum GmalgStatus {
  GMALG_STATUS_OK = 0,
  /**
   * A property, axiom or decomposition fails.
   */
  GMALG_STATUS_FAILED = 1,
  /**
   * Malformed input: bad JSON, shapes, ring or parameters.
   */
  GMALG_STATUS_INVALID_INPUT = 2,
  GMALG_STATUS_NULL_POINTER = 3,
  /**
   * A panic was caught; the library state is unchanged.
   */
  GMALG_STATUS_PANIC = 4,
} GmalgStatus;

/**
 * An assembled algebra whose context satisfied every axiom.
 */
typedef struct GmalgContext GmalgContext;

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *gmalg_last_error(void);

/**
 * Library version as a static string.
 */
const char *gmalg_version(void);

/**
 * Parses a context document and checks its axioms. An axiom failure returns
 * `Failed` with the violated law in [`gmalg_last_error`].
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is valid for one pointer write.
 */
enum GmalgStatus gmalg_context_from_json(const char *json, struct GmalgContext **out);

/**
 * Builds `M_n` or `T_n` with a `split×split` corner over `ring` (`"q"` or `"fp:<p>"`).
 *
 * # Safety
 * `ring` is a NUL-terminated string; `out` is valid for one pointer write.
 */
enum GmalgStatus gmalg_context_build(enum GmalgBuilder kind,
                                     size_t n,
                                     size_t split,
                                     const char *ring,
                                     struct GmalgContext **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `ctx` is null or a handle from this library that has not been freed.
 */
void gmalg_context_free(struct GmalgContext *ctx);

/**
 * Dimension of the assembled algebra.
 *
 * # Safety
 * `ctx` is a live handle; `out` is valid for one write.
 */
enum GmalgStatus gmalg_context_dim(const struct GmalgContext *ctx, size_t *out);

/**
 * Dimension of the center Z(G).
 *
 * # Safety
 * `ctx` is a live handle; `out` is valid for one write.
 */
enum GmalgStatus gmalg_center_dim(const struct GmalgContext *ctx, size_t *out);

/**
 * The context document of a handle.
 *
 * # Safety
 * `ctx` is a live handle; `out` is valid for one pointer write.
 */
enum GmalgStatus gmalg_context_to_json(const struct GmalgContext *ctx, char **out);

/**
 * The hypothesis report document, with default loyalty bounds and seed 0.
 *
 * # Safety
 * `ctx` is a live handle; `out` is valid for one pointer write.
 */
enum GmalgStatus gmalg_report_json(const struct GmalgContext *ctx, char **out);

/**
 * Generic proper-form decomposition of a centralizing trace given as a
 * bilinear map document. A trace that is not centralizing is `InvalidInput`;
 * one that has no proper form is `Failed`.
 *
 * # Safety
 * `ctx` is a live handle, `map_json` a NUL-terminated string and `out` valid
 * for one pointer write.
 */
enum GmalgStatus gmalg_decompose_trace_json(const struct GmalgContext *ctx,
                                            const char *map_json,
                                            char **out);

/**
 * Runs the property suite and returns its text report. `Failed` when a
 * property fails; the report is still written.
 *
 * # Safety
 * `ctx` is a live handle; `out` is valid for one pointer write.
 */
enum GmalgStatus gmalg_suite(const struct GmalgContext *ctx,
                             uint64_t seed,
                             size_t count,
                             char **out);

/**
 * Fills `out[0..len]` with the generator stream for `seed`.
 *
 * # Safety
 * `out` is valid for `len` writes.
 */
enum GmalgStatus gmalg_rng_fill(uint64_t seed, uint64_t *out, size_t len);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library that has not been freed.
 */
void gmalg_string_free(char *s);

#endif  /* GMALG_H */
