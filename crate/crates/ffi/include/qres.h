#ifndef QRES_H
#define QRES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QresMode {
  QRES_MODE_STRONG = 0,
  QRES_MODE_PLAIN = 1,
} QresMode;

typedef enum QresStatus {
  QRES_STATUS_OK = 0,
  QRES_STATUS_NULL_ARGUMENT = 1,
  QRES_STATUS_INVALID_UTF8 = 2,
  QRES_STATUS_PARSE = 3,
  QRES_STATUS_BAD_TYPE = 4,
  QRES_STATUS_NOT_REDUCED = 5,
  QRES_STATUS_NOT_SEMI_INVARIANT = 6,
  QRES_STATUS_EXTENSION_OVERFLOW = 7,
  QRES_STATUS_BAD_WEIGHTS = 8,
  QRES_STATUS_NOT_QUASI_HOMOGENEOUS = 9,
  QRES_STATUS_DEGENERATE = 10,
  QRES_STATUS_INTERNAL = 11,
} QresStatus;

/**
 * Genus computation for a curve in a weighted projective plane.
 */
typedef struct QresCurve QresCurve;

/**
 * A germ with its normalized ambient type.
 */
typedef struct QresGerm QresGerm;

/**
 * Invariants of a germ together with its resolution tree.
 */
typedef struct QresReport QresReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; valid until the next call
 * that fails. Never null.
 */
const char *qres_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void qres_string_free(char *s);

/**
 * Parses a polynomial in `x`, `y` as a germ on `X(d;a,b)`, normalizing the type.
 *
 * # Safety
 * `poly` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QresStatus qres_germ_new(const char *poly,
                              int64_t d,
                              int64_t a,
                              int64_t b,
                              struct QresGerm **out);

/**
 * # Safety
 * `g` must be null or a handle from [`qres_germ_new`] not yet freed.
 */
void qres_germ_free(struct QresGerm *g);

/**
 * Resolves the germ and computes its invariants.
 *
 * # Safety
 * `g` must be a live germ handle and `out` a valid pointer.
 */
enum QresStatus qres_germ_report(const struct QresGerm *g,
                                 enum QresMode mode,
                                 struct QresReport **out);

/**
 * # Safety
 * `r` must be null or a handle from [`qres_germ_report`] not yet freed.
 */
void qres_report_free(struct QresReport *r);

/**
 * δ^ω as `"num/den"`.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_delta_w(const struct QresReport *r);

/**
 * μ^ω as `"num/den"`.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_mu_w(const struct QresReport *r);

/**
 * Orbifold Euler characteristic as `"num/den"`.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_euler_orb(const struct QresReport *r);

/**
 * Classical δ of the germ upstairs, as `"num/den"`.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_delta(const struct QresReport *r);

/**
 * Number of quotient branches; `-1` for a null handle.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
int64_t qres_report_r_w(const struct QresReport *r);

/**
 * Number of branches upstairs; `-1` for a null handle.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
int64_t qres_report_r(const struct QresReport *r);

/**
 * Classical Milnor number upstairs; `-1` for a null handle.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
int64_t qres_report_mu(const struct QresReport *r);

/**
 * Number of blow-up contributions (internal tree nodes).
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
size_t qres_report_contribution_count(const struct QresReport *r);

/**
 * The `i`-th weighted contribution in node order, or null when out of range.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_contribution(const struct QresReport *r, size_t i);

/**
 * Report and resolution tree as JSON.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_json(const struct QresReport *r);

/**
 * Resolution tree in Graphviz format.
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qres_report_dot(const struct QresReport *r);

/**
 * Genus of `{F = 0}` in `P²(w0,w1,w2)`; `F` is a polynomial in `x0`, `x1`, `x2`.
 *
 * # Safety
 * `poly` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QresStatus qres_curve_new(const char *poly,
                               int64_t w0,
                               int64_t w1,
                               int64_t w2,
                               struct QresCurve **out);

/**
 * # Safety
 * `c` must be null or a handle from [`qres_curve_new`] not yet freed.
 */
void qres_curve_free(struct QresCurve *c);

/**
 * Genus as `"num/den"`.
 *
 * # Safety
 * `c` must be a live curve handle.
 */
char *qres_curve_genus(const struct QresCurve *c);

/**
 * Virtual genus `g_{d,ω}` as `"num/den"`.
 *
 * # Safety
 * `c` must be a live curve handle.
 */
char *qres_curve_virtual_genus(const struct QresCurve *c);

/**
 * Weighted degree of the (normalized) curve; `-1` for a null handle.
 *
 * # Safety
 * `c` must be null or a live curve handle.
 */
int64_t qres_curve_degree(const struct QresCurve *c);

/**
 * Number of singular points or conjugate clusters used in the formula.
 *
 * # Safety
 * `c` must be null or a live curve handle.
 */
size_t qres_curve_point_count(const struct QresCurve *c);

/**
 * Whether the genus came with a reducibility warning.
 *
 * # Safety
 * `c` must be null or a live curve handle.
 */
bool qres_curve_has_warning(const struct QresCurve *c);

/**
 * Full genus report as JSON.
 *
 * # Safety
 * `c` must be a live curve handle.
 */
char *qres_curve_json(const struct QresCurve *c);

/**
 * `g_{d,ω}` for normalized weights, as `"num/den"`; null on invalid weights.
 */
char *qres_virtual_genus(int64_t d, int64_t w0, int64_t w1, int64_t w2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRES_H */
