#ifndef UNIALG_H
#define UNIALG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum UnialgStatus {
  UNIALG_STATUS_OK = 0,
  UNIALG_STATUS_NULL_POINTER = 1,
  UNIALG_STATUS_INVALID_UTF8 = 2,
  UNIALG_STATUS_PARSE_ERROR = 3,
  UNIALG_STATUS_INVALID_INPUT = 4,
  UNIALG_STATUS_NOT_UNIFIABLE = 5,
  UNIALG_STATUS_INTERNAL = 6,
} UnialgStatus;

/**
 * A pointer machine.
 */
typedef struct UnialgMachine UnialgMachine;

/**
 * A validated observation.
 */
typedef struct UnialgObservation UnialgObservation;

/**
 * A linear combination of flows.
 */
typedef struct UnialgWiring UnialgWiring;

/**
 * A word together with its alphabet.
 */
typedef struct UnialgWord UnialgWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null. The
 * pointer stays valid until the next call on the same thread.
 */
const char *unialg_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void unialg_string_free(char *s);

/**
 * Releases a wiring. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void unialg_wiring_free(struct UnialgWiring *p);

/**
 * Releases a word. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void unialg_word_free(struct UnialgWord *p);

/**
 * Releases an observation. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void unialg_observation_free(struct UnialgObservation *p);

/**
 * Releases a machine. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void unialg_machine_free(struct UnialgMachine *p);

/**
 * Writes the most general unifier of two terms as `{?x -> t, ...}`.
 * Returns `NotUnifiable` when there is none.
 *
 * # Safety
 * `left` and `right` must be nul-terminated strings; `out` must be writable.
 */
enum UnialgStatus unialg_unify(const char *left, const char *right, char **out);

/**
 * Parses a wiring such as `(a <- b) + 2 * (?x . a <- ?x)`.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum UnialgStatus unialg_wiring_parse(const char *source, struct UnialgWiring **out);

/**
 * # Safety
 * `w` must be a live wiring; `out` must be writable.
 */
enum UnialgStatus unialg_wiring_render(const struct UnialgWiring *w, char **out);

/**
 * Product `a b`.
 *
 * # Safety
 * `a` and `b` must be live wirings; `out` must be writable.
 */
enum UnialgStatus unialg_wiring_mul(const struct UnialgWiring *a,
                                    const struct UnialgWiring *b,
                                    struct UnialgWiring **out);

/**
 * Adjoint of `w`.
 *
 * # Safety
 * `w` must be a live wiring; `out` must be writable.
 */
enum UnialgStatus unialg_wiring_dagger(const struct UnialgWiring *w, struct UnialgWiring **out);

/**
 * # Safety
 * `w` must be a live wiring; `out` must be writable.
 */
enum UnialgStatus unialg_wiring_is_isometric(const struct UnialgWiring *w, bool *out);

/**
 * Parses a word file (`alphabet ...` and `word ...` lines).
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum UnialgStatus unialg_word_parse(const char *source, struct UnialgWord **out);

/**
 * # Safety
 * `w` must be a live word; `out` must be writable.
 */
enum UnialgStatus unialg_word_render(const struct UnialgWord *w, char **out);

/**
 * Parses and validates an observation file.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum UnialgStatus unialg_observation_parse(const char *source, struct UnialgObservation **out);

/**
 * # Safety
 * `obs` must be a live observation; `out` must be writable.
 */
enum UnialgStatus unialg_observation_render(const struct UnialgObservation *obs, char **out);

/**
 * # Safety
 * `obs` must be a live observation; `out` must be writable.
 */
enum UnialgStatus unialg_observation_is_isometric(const struct UnialgObservation *obs, bool *out);

/**
 * Decides whether `obs` accepts `word`. `positions` is a positions file
 * naming one closed term per line, or null for fresh constants.
 *
 * # Safety
 * `obs` and `word` must be live objects; `positions` must be null or a
 * nul-terminated string; `out` must be writable.
 */
enum UnialgStatus unialg_observation_accepts(const struct UnialgObservation *obs,
                                             const struct UnialgWord *word,
                                             const char *positions,
                                             bool *out);

/**
 * Parses a machine file.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum UnialgStatus unialg_machine_parse(const char *source, struct UnialgMachine **out);

/**
 * # Safety
 * `m` must be a live machine; `out` must be writable.
 */
enum UnialgStatus unialg_machine_render(const struct UnialgMachine *m, char **out);

/**
 * # Safety
 * `m` must be a live machine; `out` must be writable.
 */
enum UnialgStatus unialg_machine_is_reversible(const struct UnialgMachine *m, bool *out);

/**
 * Decides acceptance by running the machine. The word's letters must
 * belong to the machine's alphabet.
 *
 * # Safety
 * `m` and `word` must be live objects; `out` must be writable.
 */
enum UnialgStatus unialg_machine_accepts(const struct UnialgMachine *m,
                                         const struct UnialgWord *word,
                                         bool *out);

/**
 * The observation compiled from a machine.
 *
 * # Safety
 * `m` must be a live machine; `out` must be writable.
 */
enum UnialgStatus unialg_machine_compile(const struct UnialgMachine *m,
                                         struct UnialgObservation **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIALG_H */
