#ifndef PARASOL_H
#define PARASOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first three match the command-line exit codes.
 */
typedef enum ParasolStatus {
  PARASOL_STATUS_OK = 0,
  /**
   * The report was produced but at least one check failed.
   */
  PARASOL_STATUS_CHECK_FAILED = 1,
  /**
   * The manifest could not be parsed or is inconsistent.
   */
  PARASOL_STATUS_INPUT_ERROR = 2,
  PARASOL_STATUS_NULL_POINTER = 3,
  PARASOL_STATUS_INVALID_UTF8 = 4,
  /**
   * An internal error; the message describes it.
   */
  PARASOL_STATUS_PANIC = 5,
} ParasolStatus;

/**
 * A validated instance.
 */
typedef struct ParasolInstance ParasolInstance;

/**
 * A finished report.
 */
typedef struct ParasolReport ParasolReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON manifest into an instance.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ParasolStatus parasol_instance_from_json(const char *json, struct ParasolInstance **out);

/**
 * The built-in reference instance, including its potential.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ParasolStatus parasol_instance_golden(struct ParasolInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not be used afterwards.
 */
void parasol_instance_free(struct ParasolInstance *inst);

/**
 * Lie algebra and structure axiom checks only.
 *
 * # Safety
 * `inst` must be a live instance and `out` a valid pointer.
 */
enum ParasolStatus parasol_validate(const struct ParasolInstance *inst, struct ParasolReport **out);

/**
 * The full pipeline with a seeded sectional-curvature sweep.
 *
 * # Safety
 * `inst` must be a live instance and `out` a valid pointer.
 */
enum ParasolStatus parasol_analyze(const struct ParasolInstance *inst,
                                   uint64_t seed,
                                   struct ParasolReport **out);

/**
 * The reference instance against its table of exact values.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ParasolStatus parasol_paper_check(uint64_t seed, struct ParasolReport **out);

/**
 * `Ok` when every check and reference value passed, `CheckFailed`
 * otherwise.
 *
 * # Safety
 * `r` must be a live report.
 */
enum ParasolStatus parasol_report_status(const struct ParasolReport *r);

/**
 * Deterministic JSON rendering.
 *
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum ParasolStatus parasol_report_to_json(const struct ParasolReport *r, char **out);

/**
 * Human-readable rendering.
 *
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum ParasolStatus parasol_report_to_text(const struct ParasolReport *r, char **out);

/**
 * # Safety
 * `r` must come from this library and not be used afterwards.
 */
void parasol_report_free(struct ParasolReport *r);

/**
 * # Safety
 * `s` must be a string returned by this library and not be used afterwards.
 */
void parasol_string_free(char *s);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread.
 */
const char *parasol_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARASOL_H */
