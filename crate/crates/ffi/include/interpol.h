#ifndef INTERPOL_H
#define INTERPOL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum InterpolStatus {
  INTERPOL_STATUS_OK = 0,
  /**
   * an argument was NULL or not valid UTF-8
   */
  INTERPOL_STATUS_INVALID_ARGUMENT = 1,
  INTERPOL_STATUS_SYNTAX = 2,
  INTERPOL_STATUS_UNSUPPORTED = 3,
  INTERPOL_STATUS_PRECONDITION = 4,
  INTERPOL_STATUS_RESOURCE_LIMIT = 5,
  /**
   * no interpolant or definition exists over the signature
   */
  INTERPOL_STATUS_NONE_EXISTS = 6,
  /**
   * the inclusion to interpolate does not hold
   */
  INTERPOL_STATUS_NOT_ENTAILED = 7,
  /**
   * an internal self-check failed; a bug
   */
  INTERPOL_STATUS_VERIFICATION = 8,
  INTERPOL_STATUS_PANIC = 9,
  INTERPOL_STATUS_OTHER = 10,
} InterpolStatus;

typedef enum InterpolRelation {
  INTERPOL_RELATION_HT = 0,
  INTERPOL_RELATION_CAUTIOUS = 1,
} InterpolRelation;

typedef struct InterpolOntology InterpolOntology;

typedef struct InterpolProgram InterpolProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *interpol_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread.
 */
const char *interpol_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void interpol_string_free(char *s);

/**
 * Parses an ontology in the DSL.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` a valid pointer.
 */
enum InterpolStatus interpol_ontology_parse(const char *text, struct InterpolOntology **out);

/**
 * # Safety
 * `o` must come from this library or be NULL.
 */
void interpol_ontology_free(struct InterpolOntology *o);

/**
 * Number of axioms, or 0 for NULL.
 *
 * # Safety
 * `o` must come from this library or be NULL.
 */
size_t interpol_ontology_len(const struct InterpolOntology *o);

/**
 * The ontology in the DSL; free with `interpol_string_free`.
 *
 * # Safety
 * `o` must come from this library or be NULL.
 */
char *interpol_ontology_render(const struct InterpolOntology *o);

/**
 * Whether `o` entails `lhs [= rhs`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_subsumes(const struct InterpolOntology *o,
                                      const char *lhs,
                                      const char *rhs,
                                      bool *result);

/**
 * Whether the two ontologies entail each other.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InterpolStatus interpol_equivalent(const struct InterpolOntology *a,
                                        const struct InterpolOntology *b,
                                        bool *result);

/**
 * Uniform interpolant of `o` for the comma-separated symbols `keep`.
 * `policy` is "fixpoint", "aux" or "approx:K"; NULL means "fixpoint".
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_uniform_interpolant(const struct InterpolOntology *o,
                                                 const char *keep,
                                                 const char *policy,
                                                 struct InterpolOntology **result);

/**
 * Interpolant of `c1 [= c2` under `o1 ∪ o2`, written to `result` as DSL
 * text. Either ontology may be NULL (empty). With `sigma` NULL the shared
 * signature is used. Returns `NoneExists` or `NotEntailed` when there is
 * no interpolant.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_craig_interpolant(const struct InterpolOntology *o1,
                                               const struct InterpolOntology *o2,
                                               const char *c1,
                                               const char *c2,
                                               const char *sigma,
                                               char **result);

/**
 * Whether an ALCO(Σ)-interpolant of `c1 [= c2` under `o` (NULL for
 * empty) exists.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_alco_interpolant_exists(const struct InterpolOntology *o,
                                                     const char *c1,
                                                     const char *c2,
                                                     const char *sigma,
                                                     bool *result);

/**
 * Explicit Σ-definition of `target` under `o` within `context` (NULL for
 * top). Returns `NoneExists` when the target is not definable.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_explicit_definition(const struct InterpolOntology *o,
                                                 const char *context,
                                                 const char *target,
                                                 const char *sigma,
                                                 char **result);

/**
 * Parses a program (`a | b :- c, not d, not not e.`).
 *
 * # Safety
 * `text` must be NUL-terminated; `out` valid.
 */
enum InterpolStatus interpol_program_parse(const char *text, struct InterpolProgram **out);

/**
 * # Safety
 * `p` must come from this library or be NULL.
 */
void interpol_program_free(struct InterpolProgram *p);

/**
 * The program text; free with `interpol_string_free`.
 *
 * # Safety
 * `p` must come from this library or be NULL.
 */
char *interpol_program_render(const struct InterpolProgram *p);

/**
 * Answer sets, one per line as space-separated atoms (an empty line for
 * the empty set); free with `interpol_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InterpolStatus interpol_answer_sets(const struct InterpolProgram *p,
                                         size_t *count,
                                         char **result);

/**
 * Forgets the comma-separated `atoms` from `p` under the HT projection.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_forget_ht(const struct InterpolProgram *p,
                                       const char *atoms,
                                       struct InterpolProgram **result);

/**
 * Whether `p1` entails `p2` under `relation`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InterpolStatus interpol_program_entails(const struct InterpolProgram *p1,
                                             const struct InterpolProgram *p2,
                                             enum InterpolRelation relation,
                                             bool *result);

/**
 * Whether `candidate` is a uniform interpolant of `p` for the
 * comma-separated atoms `keep`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum InterpolStatus interpol_is_uniform_interpolant(const struct InterpolProgram *p,
                                                    const char *keep,
                                                    const struct InterpolProgram *candidate,
                                                    enum InterpolRelation relation,
                                                    bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERPOL_H */
