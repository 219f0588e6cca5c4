#ifndef GLUECO_H
#define GLUECO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  /**
   * The call ran; the mathematical check it performed failed.
   */
  GL_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed or inconsistent input.
   */
  GL_STATUS_INPUT_ERROR = 2,
  /**
   * A search guard was exceeded.
   */
  GL_STATUS_RESOURCE_EXCEEDED = 3,
  GL_STATUS_NULL_POINTER = 4,
  /**
   * An internal error; the message says where.
   */
  GL_STATUS_PANIC = 5,
} GlStatus;

/**
 * An algebra given by a quiver with relations over a prime field.
 */
typedef struct GlAlgebra GlAlgebra;

/**
 * A finite-dimensional module, i.e. a representation of the bound quiver.
 */
typedef struct GlModule GlModule;

/**
 * Library version as a static NUL-terminated string.
 */
const char *gl_version(void);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next `gl_*` call on the same thread.
 */
const char *gl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void gl_string_free(char *s);

/**
 * Built-in algebra by name: `A2`, `k`, `lambda` (lower triangular matrices
 * over A2) or `A2-zero`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum GlStatus gl_algebra_builtin(const char *name, uint64_t prime, struct GlAlgebra **out);

/**
 * Algebra from its JSON presentation (vertices, arrows, relations).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum GlStatus gl_algebra_from_json(const char *json, uint64_t prime, struct GlAlgebra **out);

/**
 * The triangular matrix algebra over `base`; `mode` is `regular` or `zero`.
 *
 * # Safety
 * `base` must be a live handle, `mode` a NUL-terminated string, `out` writable.
 */
enum GlStatus gl_algebra_triangular(const struct GlAlgebra *base,
                                    const char *mode,
                                    struct GlAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void gl_algebra_free(struct GlAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum GlStatus gl_algebra_dimension(const struct GlAlgebra *a, size_t *out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum GlStatus gl_algebra_vertex_count(const struct GlAlgebra *a, size_t *out);

/**
 * Number of indecomposables with every vertex dimension at most `dim_bound`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum GlStatus gl_enumerate_count(const struct GlAlgebra *a, size_t dim_bound, size_t *out);

/**
 * Standard module by name: `R`, `DR`, `0`, `P(v)`, `S(v)`, `I(v)`.
 *
 * # Safety
 * `a` must be a live handle, `name` a NUL-terminated string, `out` writable.
 */
enum GlStatus gl_module_standard(const struct GlAlgebra *a,
                                 const char *name,
                                 struct GlModule **out);

/**
 * Module from JSON `{"dims": {..}, "maps": {..}}` over `a`; the `algebra`
 * field, if present, is ignored.
 *
 * # Safety
 * `a` must be a live handle, `json` a NUL-terminated string, `out` writable.
 */
enum GlStatus gl_module_from_json(const struct GlAlgebra *a,
                                  const char *json,
                                  struct GlModule **out);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void gl_module_free(struct GlModule *m);

/**
 * Total dimension over the ground field.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum GlStatus gl_module_dimension(const struct GlModule *m, size_t *out);

/**
 * Number of indecomposable summands, counted with multiplicity.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum GlStatus gl_module_summand_count(const struct GlModule *m, size_t *out);

/**
 * # Safety
 * `m`, `n` must be live handles over the same algebra and `out` writable.
 */
enum GlStatus gl_hom_dim(const struct GlModule *m, const struct GlModule *n, size_t *out);

/**
 * `dim Ext^degree(m, n)`; degree 0 is Hom.
 *
 * # Safety
 * `m`, `n` must be live handles over the same algebra and `out` writable.
 */
enum GlStatus gl_ext_dim(const struct GlModule *m,
                         const struct GlModule *n,
                         size_t degree,
                         size_t *out);

/**
 * Checks the n-tilting conditions. Returns `GL_STATUS_CHECK_FAILED` when
 * they fail; the JSON report is written to `report` either way (pass null
 * to skip it).
 *
 * # Safety
 * `m` must be a live handle; `report` null or writable.
 */
enum GlStatus gl_tilting_check(const struct GlModule *m, size_t n, char **report);

/**
 * Runs the built-in worked example over `F_prime` and writes its JSON
 * report to `out`. `GL_STATUS_CHECK_FAILED` means some stage did not behave
 * as expected.
 *
 * # Safety
 * `out` must be writable.
 */
enum GlStatus gl_paper_example_json(uint64_t prime, char **out);

#endif  /* GLUECO_H */
