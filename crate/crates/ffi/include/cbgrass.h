#ifndef CBGRASS_H
#define CBGRASS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the CLI exit codes where they
 * overlap.
 */
typedef enum CbgStatus {
  CBG_STATUS_OK = 0,
  CBG_STATUS_INVALID_INPUT = 2,
  CBG_STATUS_BUDGET_EXCEEDED = 3,
  CBG_STATUS_NULL_POINTER = 4,
  CBG_STATUS_MALFORMED_CERTIFICATE = 5,
  CBG_STATUS_NOT_SP_INPUT = 6,
  CBG_STATUS_INTERNAL = 7,
} CbgStatus;

typedef enum CbgTester {
  CBG_TESTER_AUTO = 0,
  CBG_TESTER_BRUTE_FORCE = 1,
  CBG_TESTER_TUPLE_EXHAUSTIVE = 2,
  CBG_TESTER_TUPLE_RANDOMIZED = 3,
} CbgTester;

/**
 * Opaque certificate handle; keeps the configuration it certifies.
 */
typedef struct CbgCertificate CbgCertificate;

/**
 * Opaque configuration handle.
 */
typedef struct CbgConfiguration CbgConfiguration;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next call on the same thread.
 */
const char *cbg_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void cbg_string_free(char *s);

/**
 * Parses a configuration document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CbgStatus cbg_configuration_from_json(const char *json, struct CbgConfiguration **out);

/**
 * # Safety
 * `c` must be null or a handle from [`cbg_configuration_from_json`].
 */
void cbg_configuration_free(struct CbgConfiguration *c);

/**
 * Ambient dimension n, plane size k and number of planes d.
 *
 * # Safety
 * All pointers must be valid.
 */
enum CbgStatus cbg_configuration_shape(const struct CbgConfiguration *c,
                                       size_t *n,
                                       size_t *k,
                                       size_t *d);

/**
 * Decides SP(n-k) and returns a certificate handle.
 *
 * # Safety
 * `c` must be a valid handle and `out` a valid pointer.
 */
enum CbgStatus cbg_check_sp(const struct CbgConfiguration *c,
                            enum CbgTester choice,
                            uint64_t seed,
                            uint64_t trials,
                            uint64_t budget,
                            struct CbgCertificate **out);

/**
 * # Safety
 * `c` must be null or a handle from [`cbg_check_sp`].
 */
void cbg_certificate_free(struct CbgCertificate *c);

/**
 * Writes whether the certificate says SP holds, and whether the verdict is
 * exact (not a randomized pass).
 *
 * # Safety
 * All pointers must be valid.
 */
enum CbgStatus cbg_certificate_verdict(const struct CbgCertificate *c, bool *holds, bool *exact);

/**
 * # Safety
 * `c` must be a valid handle and `out` a valid pointer.
 */
enum CbgStatus cbg_certificate_to_json(const struct CbgCertificate *c, char **out);

/**
 * Minimal partition into indecomposable SP blocks, as JSON.
 *
 * # Safety
 * `c` must be a valid handle and `out` a valid pointer.
 */
enum CbgStatus cbg_decompose_json(const struct CbgConfiguration *c,
                                  enum CbgTester choice,
                                  uint64_t seed,
                                  uint64_t trials,
                                  uint64_t budget,
                                  char **out);

/**
 * Replays a JSON artifact (certificate, partition report, sharpness result
 * or survey replay) and writes whether it is valid.
 *
 * # Safety
 * `json` must be a nul-terminated string and `valid` a valid pointer.
 */
enum CbgStatus cbg_verify_json(const char *json, uint64_t budget, bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CBGRASS_H */
