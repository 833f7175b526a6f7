/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SFVS_H
#define SFVS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SfvsStatus {
  SFVS_STATUS_OK = 0,
  /**
   * Malformed instance text.
   */
  SFVS_STATUS_PARSE_ERROR = 1,
  /**
   * Bad vertex id, self-loop, duplicate edge or zero weight.
   */
  SFVS_STATUS_INVALID_INPUT = 2,
  /**
   * The instance is outside what the chosen solver accepts
   * (independence bound, weights, size limit, kind).
   */
  SFVS_STATUS_PRECONDITION = 3,
  /**
   * Unknown algorithm or kind name, or a string that is not UTF-8.
   */
  SFVS_STATUS_INVALID_ARGUMENT = 4,
  SFVS_STATUS_NULL_POINTER = 5,
  SFVS_STATUS_INTERNAL = 6,
} SfvsStatus;

/**
 * Graph plus special set under construction, or a parsed instance.
 */
typedef struct SfvsInstance SfvsInstance;

typedef struct SfvsSolution SfvsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an instance with `n` isolated unit-weight vertices. `kind` is one
 * of `wsfvs sfvs fvs nmc nmcdt wnmcdt vc mis`.
 *
 * # Safety
 * `kind` must be a nul-terminated string and `out` a valid pointer.
 */
enum SfvsStatus sfvs_instance_new(size_t n, const char *kind, struct SfvsInstance **out);

/**
 * Parses an instance in the text format read by `sfvs solve`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum SfvsStatus sfvs_instance_parse(const char *text, struct SfvsInstance **out);

/**
 * Adds the edge `u v`. Duplicates are reported by [`sfvs_solve`].
 *
 * # Safety
 * `inst` must come from this library and not be freed.
 */
enum SfvsStatus sfvs_instance_add_edge(struct SfvsInstance *inst, size_t u, size_t v);

/**
 * # Safety
 * `inst` must come from this library and not be freed.
 */
enum SfvsStatus sfvs_instance_set_weight(struct SfvsInstance *inst, size_t v, uint64_t weight);

/**
 * Adds `v` to the special set (S for cycle problems, T for multiway cut).
 * Ignored for `fvs`, where S is always every vertex.
 *
 * # Safety
 * `inst` must come from this library and not be freed.
 */
enum SfvsStatus sfvs_instance_add_special(struct SfvsInstance *inst, size_t v);

/**
 * Number of vertices, 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or come from this library and not be freed.
 */
size_t sfvs_instance_vertex_count(const struct SfvsInstance *inst);

/**
 * # Safety
 * `inst` must be null or come from this library; it is invalid afterwards.
 */
void sfvs_instance_free(struct SfvsInstance *inst);

/**
 * Solves `inst` with `algo` (`wsfvs-a3 sfvs-xp nmc-a2 nmcdt-xp wnmcdt-a2
 * oracle`). `d` is the independence bound for the XP solvers; 0 means use
 * the independence number of the graph.
 *
 * # Safety
 * `inst` must come from this library, `algo` must be nul-terminated and
 * `out` a valid pointer.
 */
enum SfvsStatus sfvs_solve(const struct SfvsInstance *inst,
                           const char *algo,
                           size_t d,
                           struct SfvsSolution **out);

/**
 * Total weight removed; 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or come from this library and not be freed.
 */
uint64_t sfvs_solution_objective(const struct SfvsSolution *sol);

/**
 * False only for multiway cut instances with adjacent terminals.
 *
 * # Safety
 * `sol` must be null or come from this library and not be freed.
 */
bool sfvs_solution_feasible(const struct SfvsSolution *sol);

/**
 * Number of removed vertices.
 *
 * # Safety
 * `sol` must be null or come from this library and not be freed.
 */
size_t sfvs_solution_len(const struct SfvsSolution *sol);

/**
 * Copies up to `cap` removed vertices, ascending, into `buf` and returns
 * the total count. Call with `cap = 0` to size the buffer.
 *
 * # Safety
 * `buf` must hold `cap` elements; `sol` must come from this library.
 */
size_t sfvs_solution_removed(const struct SfvsSolution *sol, size_t *buf, size_t cap);

/**
 * # Safety
 * `sol` must be null or come from this library; it is invalid afterwards.
 */
void sfvs_solution_free(struct SfvsSolution *sol);

/**
 * Message for the last failing call on this thread, empty after a
 * success. Valid until the next call into the library on this thread.
 */
const char *sfvs_last_error_message(void);

const char *sfvs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SFVS_H */
