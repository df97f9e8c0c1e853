#ifndef TRANSIT_H
#define TRANSIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TransitStatus {
  TRANSIT_STATUS_OK = 0,
  TRANSIT_STATUS_NULL_POINTER = 1,
  TRANSIT_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document.
   */
  TRANSIT_STATUS_PARSE = 3,
  /**
   * Well-formed input that violates a structural requirement.
   */
  TRANSIT_STATUS_INVALID = 4,
  TRANSIT_STATUS_UNKNOWN_TAG = 5,
  /**
   * Ground set too large.
   */
  TRANSIT_STATUS_CAPACITY = 6,
  /**
   * The operation needs a T-system.
   */
  TRANSIT_STATUS_NOT_T_SYSTEM = 7,
  /**
   * The document holds the other kind of object.
   */
  TRANSIT_STATUS_WRONG_KIND = 8,
  TRANSIT_STATUS_PANIC = 9,
} TransitStatus;

/**
 * Opaque transit function.
 */
typedef struct TransitFunctionHandle TransitFunctionHandle;

/**
 * Opaque set system.
 */
typedef struct TransitSetSystem TransitSetSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call.
 */
const char *transit_last_error(void);

/**
 * Library version, statically allocated.
 */
const char *transit_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void transit_string_free(char *s);

/**
 * Parses a set-system document (text or JSON).
 *
 * # Safety
 * `source` is a NUL-terminated string; `out` is writable.
 */
enum TransitStatus transit_system_parse(const char *source, struct TransitSetSystem **out);

/**
 * # Safety
 * `s` comes from this library and is not used afterwards. Null is ignored.
 */
void transit_system_free(struct TransitSetSystem *s);

/**
 * Parses a transit-function document (text or JSON).
 *
 * # Safety
 * `source` is a NUL-terminated string; `out` is writable.
 */
enum TransitStatus transit_function_parse(const char *source, struct TransitFunctionHandle **out);

/**
 * # Safety
 * `r` comes from this library and is not used afterwards. Null is ignored.
 */
void transit_function_free(struct TransitFunctionHandle *r);

/**
 * Number of elements of the ground set.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum TransitStatus transit_system_elements(const struct TransitSetSystem *s, size_t *out);

/**
 * Number of clusters.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum TransitStatus transit_system_clusters(const struct TransitSetSystem *s, size_t *out);

/**
 * Evaluates a predicate (`K2`, `weakHierarchy`, ...) or class (`py`,
 * `pyramidal`, `weaklyPyramidal`) on a set system.
 *
 * # Safety
 * `s` is a live handle, `tag` a NUL-terminated string, `holds` writable.
 */
enum TransitStatus transit_system_check(const struct TransitSetSystem *s,
                                        const char *tag,
                                        bool *holds);

/**
 * Evaluates a transit axiom (`m`, `w`, `x'`, ...), or a predicate or class
 * of its transit sets.
 *
 * # Safety
 * `r` is a live handle, `tag` a NUL-terminated string, `holds` writable.
 */
enum TransitStatus transit_function_check(const struct TransitFunctionHandle *r,
                                          const char *tag,
                                          bool *holds);

/**
 * Canonical transit function of a T-system.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum TransitStatus transit_system_canonical(const struct TransitSetSystem *s,
                                            struct TransitFunctionHandle **out);

/**
 * Family of transit sets.
 *
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
enum TransitStatus transit_function_sets(const struct TransitFunctionHandle *r,
                                         struct TransitSetSystem **out);

/**
 * Union closure, singletons included.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum TransitStatus transit_system_union_closure(const struct TransitSetSystem *s,
                                                struct TransitSetSystem **out);

/**
 * Compatible order as space-separated labels, or null in `order` when none
 * exists.
 *
 * # Safety
 * `s` is a live handle; `order` is writable.
 */
enum TransitStatus transit_system_order(const struct TransitSetSystem *s, char **order);

/**
 * Text document of a set system.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum TransitStatus transit_system_emit(const struct TransitSetSystem *s, char **out);

/**
 * Text document of a transit function.
 *
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
enum TransitStatus transit_function_emit(const struct TransitFunctionHandle *r, char **out);

/**
 * Full JSON check report of a document (text or JSON), as printed by
 * `transit --format json check`.
 *
 * # Safety
 * `source` is a NUL-terminated string; `out` is writable.
 */
enum TransitStatus transit_report_json(const char *source, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRANSIT_H */
