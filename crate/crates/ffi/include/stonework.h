#ifndef STONEWORK_H
#define STONEWORK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or invalid input structure.
   */
  SW_STATUS_INPUT_ERROR = 3,
  /**
   * A checked correspondence failed.
   */
  SW_STATUS_ASSERTION_FAILED = 4,
  /**
   * The input parsed as a different kind of structure.
   */
  SW_STATUS_WRONG_KIND = 5,
  SW_STATUS_OUT_OF_RANGE = 6,
  SW_STATUS_PANIC = 7,
} SwStatus;

typedef enum SwRelationKind {
  SW_RELATION_KIND_LEQ = 0,
  SW_RELATION_KIND_PERP = 1,
  SW_RELATION_KIND_PREC = 2,
  SW_RELATION_KIND_SMILE = 3,
} SwRelationKind;

/**
 * A poset with its derived relations.
 */
typedef struct SwPoset SwPoset;

/**
 * An inverse semigroup with its natural order and derived relations.
 */
typedef struct SwSemigroup SwSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sw_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sw_string_free(char *s);

/**
 * Parses a poset from JSON.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum SwStatus sw_poset_from_json(const char *json, struct SwPoset **out);

/**
 * Builds a named fixture poset such as `B(3)` or `diamond`.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum SwStatus sw_poset_from_fixture(const char *name, struct SwPoset **out);

/**
 * # Safety
 * `p` must come from a poset constructor and not have been freed.
 */
void sw_poset_free(struct SwPoset *p);

/**
 * # Safety
 * `p` must be a live poset handle and `out` a valid pointer.
 */
enum SwStatus sw_poset_len(const struct SwPoset *p, size_t *out);

/**
 * Whether `a R b` for the derived relation `kind`, by element index.
 *
 * # Safety
 * `p` must be a live poset handle and `out` a valid pointer.
 */
enum SwStatus sw_poset_relation_holds(const struct SwPoset *p,
                                      enum SwRelationKind kind,
                                      size_t a,
                                      size_t b,
                                      bool *out);

/**
 * Number of `≺`-ultrafilters.
 *
 * # Safety
 * `p` must be a live poset handle and `out` a valid pointer.
 */
enum SwStatus sw_poset_ultrafilter_count(const struct SwPoset *p, size_t *out);

/**
 * Classification report as JSON.
 *
 * # Safety
 * `p` must be a live poset handle and `out` a valid pointer.
 */
enum SwStatus sw_poset_classify_json(const struct SwPoset *p, char **out);

/**
 * Parses an inverse semigroup from JSON.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum SwStatus sw_semigroup_from_json(const char *json, struct SwSemigroup **out);

/**
 * Builds a named fixture semigroup such as `I(2)` or `EvsSjoins`.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum SwStatus sw_semigroup_from_fixture(const char *name, struct SwSemigroup **out);

/**
 * # Safety
 * `s` must come from a semigroup constructor and not have been freed.
 */
void sw_semigroup_free(struct SwSemigroup *s);

/**
 * # Safety
 * `s` must be a live semigroup handle and `out` a valid pointer.
 */
enum SwStatus sw_semigroup_len(const struct SwSemigroup *s, size_t *out);

/**
 * Semigroup classification report as JSON.
 *
 * # Safety
 * `s` must be a live semigroup handle and `out` a valid pointer.
 */
enum SwStatus sw_semigroup_classify_json(const struct SwSemigroup *s, char **out);

/**
 * The ultrafilter groupoid as JSON; the arrow count goes to `arrows`
 * when it is not null.
 *
 * # Safety
 * `s` must be a live semigroup handle, `out` a valid pointer and
 * `arrows` null or valid.
 */
enum SwStatus sw_semigroup_dualize_json(const struct SwSemigroup *s, size_t *arrows, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STONEWORK_H */
