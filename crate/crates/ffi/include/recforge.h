#ifndef RECFORGE_H
#define RECFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values up to 5 match the CLI exit codes.
 */
typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_INVALID = 1,
  RF_STATUS_RESOURCE = 2,
  RF_STATUS_IO = 3,
  RF_STATUS_PARSE = 4,
  RF_STATUS_CHECK = 5,
  RF_STATUS_NULL_ARGUMENT = 6,
  RF_STATUS_PANIC = 7,
} RfStatus;

/**
 * Opaque certificate document.
 */
typedef struct RfCertificate RfCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the next
 * call on the same thread.
 */
const char *rf_last_error(void);

/**
 * Builds a piece with χ(Cay S) > k whose nonrecurrence witness has density
 * above `delta` (a decimal or "p/q" string).
 *
 * # Safety
 * `delta` must be a valid C string and `out` a valid pointer.
 */
enum RfStatus rf_build_piece(uint32_t k, const char *delta, struct RfCertificate **out);

/**
 * Runs `rounds` stages; `e_spec` may be null or a set description such as
 * "powers:2". Stopping early on caps returns `RF_STATUS_RESOURCE` and still
 * sets `out` to the deepest certificate reached.
 *
 * # Safety
 * `delta` must be a valid C string, `e_spec` null or a valid C string, and
 * `out` a valid pointer.
 */
enum RfStatus rf_assemble(const char *delta,
                          uint32_t rounds,
                          const char *e_spec,
                          struct RfCertificate **out);

/**
 * Parses a document.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum RfStatus rf_certificate_from_json(const char *json, struct RfCertificate **out);

/**
 * Serializes a document; free the result with `rf_string_free`.
 *
 * # Safety
 * `cert` must come from this library and `out` must be a valid pointer.
 */
enum RfStatus rf_certificate_to_json(const struct RfCertificate *cert, char **out);

/**
 * Re-runs every check from the raw sets. On `RF_STATUS_CHECK` the failing
 * check is named by `rf_last_error`.
 *
 * # Safety
 * `cert` must come from this library.
 */
enum RfStatus rf_certificate_verify(const struct RfCertificate *cert);

/**
 * Number of elements of S, or 0 for a null handle.
 *
 * # Safety
 * `cert` must be null or come from this library.
 */
size_t rf_certificate_set_len(const struct RfCertificate *cert);

/**
 * Element `i` of S as a decimal string; free with `rf_string_free`.
 *
 * # Safety
 * `cert` must come from this library and `out` must be a valid pointer.
 */
enum RfStatus rf_certificate_set_element(const struct RfCertificate *cert, size_t i, char **out);

/**
 * Exact χ(KG(n, r)) within `budget` search nodes.
 *
 * # Safety
 * `chi` must be a valid pointer.
 */
enum RfStatus rf_kneser_chromatic(uint32_t n, uint32_t r, uint64_t budget, uint32_t *chi);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `cert` must be null or come from this library, and not be used afterwards.
 */
void rf_certificate_free(struct RfCertificate *cert);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or come from this library, and not be used afterwards.
 */
void rf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECFORGE_H */
