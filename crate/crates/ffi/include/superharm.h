#ifndef SUPERHARM_H
#define SUPERHARM_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SuperharmSchemeKind {
  SUPERHARM_SCHEME_KIND_GL_NATURAL = 0,
  SUPERHARM_SCHEME_KIND_GL_TWISTED = 1,
  SUPERHARM_SCHEME_KIND_OSP_EVEN_NATURAL = 2,
  SUPERHARM_SCHEME_KIND_OSP_EVEN_TWISTED = 3,
  SUPERHARM_SCHEME_KIND_OSP_ODD_NATURAL = 4,
  SUPERHARM_SCHEME_KIND_OSP_ODD_TWISTED = 5,
} SuperharmSchemeKind;

typedef enum SuperharmStatus {
  SUPERHARM_STATUS_OK = 0,
  SUPERHARM_STATUS_NULL_POINTER = 1,
  SUPERHARM_STATUS_INVALID_UTF8 = 2,
  SUPERHARM_STATUS_INVALID_ARGUMENT = 3,
  SUPERHARM_STATUS_PARSE = 4,
  SUPERHARM_STATUS_DOMAIN = 5,
  SUPERHARM_STATUS_CAP_REQUIRED = 6,
  SUPERHARM_STATUS_TOO_LARGE = 7,
  SUPERHARM_STATUS_INTERNAL = 8,
} SuperharmStatus;

typedef enum SuperharmVerdict {
  SUPERHARM_VERDICT_PASS = 0,
  SUPERHARM_VERDICT_FAIL = 1,
  SUPERHARM_VERDICT_INCONCLUSIVE_CAP = 3,
} SuperharmVerdict;

/*
 Opaque polynomial.
 */
typedef struct SuperharmPoly SuperharmPoly;

/*
 Opaque verification report.
 */
typedef struct SuperharmReport SuperharmReport;

/*
 Opaque grading scheme.
 */
typedef struct SuperharmScheme SuperharmScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Free with
 [`superharm_string_free`].
 */
char *superharm_last_error_message(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void superharm_string_free(char *s);

/*
 Build a scheme. `n1` and `n2` are read only for twisted kinds.

 # Safety
 `out` must be a valid pointer.
 */
enum SuperharmStatus superharm_scheme_new(enum SuperharmSchemeKind kind,
                                          uint16_t n,
                                          uint16_t m,
                                          uint16_t n1,
                                          uint16_t n2,
                                          struct SuperharmScheme **out);

/*
 # Safety
 `s` must come from [`superharm_scheme_new`] and not have been freed.
 */
void superharm_scheme_free(struct SuperharmScheme *s);

/*
 Parse a polynomial such as `"x1*y1 - 1/2*th1*vt2"`.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SuperharmStatus superharm_poly_parse(const char *text, struct SuperharmPoly **out);

/*
 Canonical text of a polynomial, or NULL for a null handle.

 # Safety
 `p` must be a live polynomial handle or NULL.
 */
char *superharm_poly_render(const struct SuperharmPoly *p);

/*
 # Safety
 `p` must come from this library and not have been freed.
 */
void superharm_poly_free(struct SuperharmPoly *p);

/*
 Apply a named operator (`DELTA`, `ETA`, `DELTA_BAR`, `ETA_BAR`, `DELTA_CHECK`,
 `ETA_CHECK`, `FLAT`, `FLAT_PRIME`) of the scheme to a polynomial.

 # Safety
 All pointers must be valid; `name` NUL-terminated.
 */
enum SuperharmStatus superharm_apply_named(const struct SuperharmScheme *scheme,
                                           const char *name,
                                           const struct SuperharmPoly *p,
                                           struct SuperharmPoly **out);

/*
 Run the suite of `theorem` (1 to 4) over the label grid `[lo, hi] x [lp_lo, lp_hi]`
 (the second range is ignored for orthosymplectic schemes). A negative `cap`
 means no cap.

 # Safety
 `scheme` must be a live handle and `out` a valid pointer.
 */
enum SuperharmStatus superharm_verify_theorem(uint32_t theorem,
                                              const struct SuperharmScheme *scheme,
                                              int64_t lo,
                                              int64_t hi,
                                              int64_t lp_lo,
                                              int64_t lp_hi,
                                              int64_t cap,
                                              struct SuperharmReport **out);

/*
 # Safety
 `r` must be a live report handle.
 */
enum SuperharmVerdict superharm_report_verdict(const struct SuperharmReport *r);

/*
 JSON form of a report, or NULL for a null handle.

 # Safety
 `r` must be a live report handle or NULL.
 */
char *superharm_report_json(const struct SuperharmReport *r);

/*
 # Safety
 `r` must come from this library and not have been freed.
 */
void superharm_report_free(struct SuperharmReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERHARM_H */
