#ifndef SRCIRC_H
#define SRCIRC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum SrcircCertOutcome {
  SRCIRC_CERT_OUTCOME_CERTIFIED_ON_T = 0,
  SRCIRC_CERT_OUTCOME_CERTIFIED_FAIL = 1,
  SRCIRC_CERT_OUTCOME_INCONCLUSIVE = 2,
} SrcircCertOutcome;

/**
 * Result of every call.
 */
typedef enum SrcircStatus {
  SRCIRC_STATUS_OK = 0,
  SRCIRC_STATUS_NULL_POINTER = 1,
  SRCIRC_STATUS_INVALID_UTF8 = 2,
  SRCIRC_STATUS_INVALID_INPUT = 3,
  SRCIRC_STATUS_DOMAIN = 4,
  SRCIRC_STATUS_DIMENSION = 5,
  SRCIRC_STATUS_NOT_CONSTRUCTIBLE = 6,
  SRCIRC_STATUS_RANGE = 7,
  /**
   * Any other library error; see `srcirc_last_error`.
   */
  SRCIRC_STATUS_FAILED = 8,
  /**
   * A Rust panic was caught at the boundary.
   */
  SRCIRC_STATUS_PANIC = 9,
} SrcircStatus;

typedef enum SrcircVerdict {
  SRCIRC_VERDICT_SIMPLE_ON_CIRCLE = 0,
  SRCIRC_VERDICT_ON_CIRCLE_NOT_SIMPLE = 1,
  SRCIRC_VERDICT_OFF_CIRCLE = 2,
  SRCIRC_VERDICT_NOT_SIMPLE_ON_CIRCLE = 3,
  SRCIRC_VERDICT_CONSISTENT_WITH_ON_CIRCLE = 4,
  SRCIRC_VERDICT_DEGENERATE = 5,
} SrcircVerdict;

/**
 * Opaque polynomial handle.
 */
typedef struct SrcircPolynomial SrcircPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses comma-separated coefficients `c_0,...,c_g` ("p/q", integers or
 * decimals). On success `*out` owns a new handle.
 */
enum SrcircStatus srcirc_polynomial_parse(const char *coeffs, struct SrcircPolynomial **out);

/**
 * Builds a handle from `len` integer coefficients.
 */
enum SrcircStatus srcirc_polynomial_from_i64(const int64_t *coeffs,
                                             size_t len,
                                             struct SrcircPolynomial **out);

/**
 * Releases a handle; null is ignored.
 */
void srcirc_polynomial_free(struct SrcircPolynomial *p);

/**
 * Half-degree `g` of the polynomial.
 */
enum SrcircStatus srcirc_polynomial_g(const struct SrcircPolynomial *p, size_t *out);

/**
 * Exact simple-roots-on-the-circle test at log q = 2.
 */
enum SrcircStatus srcirc_verdict_simple(const struct SrcircPolynomial *p, enum SrcircVerdict *out);

/**
 * Certified on-circle decision. `witness_n` (nullable) receives the failing
 * index for `CertifiedFail`, 0 otherwise.
 */
enum SrcircStatus srcirc_certify(const struct SrcircPolynomial *p,
                                 enum SrcircCertOutcome *out,
                                 size_t *witness_n);

/**
 * Full check report as JSON (the same document as `srcirc check`).
 * `log_q` may be null for the default; `certify` nonzero enables the
 * certified path.
 */
enum SrcircStatus srcirc_check_json(const struct SrcircPolynomial *p,
                                    const char *log_q,
                                    int certify,
                                    char **out);

/**
 * delta / Delta / gamma report as JSON.
 */
enum SrcircStatus srcirc_delta_json(const struct SrcircPolynomial *p,
                                    const char *log_q,
                                    char **out);

/**
 * Step Hamiltonian as JSON with exact "p/q" steps.
 */
enum SrcircStatus srcirc_hamiltonian_json(const struct SrcircPolynomial *p,
                                          const char *log_q,
                                          char **out);

/**
 * Certificate as JSON.
 */
enum SrcircStatus srcirc_certify_json(const struct SrcircPolynomial *p, char **out);

/**
 * `A(z)` and `B(z)` at `z = re + i im`; `out` receives
 * `[Re A, Im A, Re B, Im B]`.
 */
enum SrcircStatus srcirc_eval_ab(const struct SrcircPolynomial *p,
                                 const char *log_q,
                                 double re,
                                 double im,
                                 double *out);

/**
 * Releases a string returned by this library; null is ignored.
 */
void srcirc_string_free(char *s);

/**
 * Message for the last failed call on this thread (empty if none). The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *srcirc_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SRCIRC_H */
