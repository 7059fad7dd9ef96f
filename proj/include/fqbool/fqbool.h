#ifndef FQBOOL_H
#define FQBOOL_H

/* C interface to the fqbool library.
 *
 * Requests and responses are JSON documents (UTF-8, NUL-terminated).
 * Strings returned through `char** out` are owned by the caller and released
 * with fqb_free(). On failure a function returns a nonzero fqb_status and
 * fqb_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FQB_BUILDING_LIBRARY)
#define FQB_API __attribute__((visibility("default")))
#else
#define FQB_API
#endif

typedef enum fqb_status {
  FQB_OK = 0,
  FQB_E_INVALID_ARGUMENT = 1,
  FQB_E_PARSE = 2,
  FQB_E_RING_MISMATCH = 3,
  FQB_E_SHAPE_MISMATCH = 4,
  FQB_E_NOT_INVERTIBLE = 5,
  FQB_E_UNSUPPORTED_MODULUS = 6,
  FQB_E_UNBOUNDED_VARIABLE = 7,
  FQB_E_EMPTY_CONSTRAINT = 8,
  FQB_E_MISSING_BITS = 9,
  FQB_E_EXTERNAL_MISMATCH = 10,
  FQB_E_IO = 11,
  FQB_E_RANK_DEFICIENT = 12,
  FQB_E_CENTERED_UNSUPPORTED = 13,
  FQB_E_KEYGEN_FAILED = 14,
  FQB_E_NOT_QUADRATIC = 15,
  FQB_E_BAD_MODULUS = 16,
  FQB_E_UNKNOWN_OPERATION = 17,
  FQB_E_INTERNAL = 99
} fqb_status;

/* A reduced Boolean system. */
typedef struct fqb_system fqb_system;

FQB_API const char* fqb_version(void);
FQB_API const char* fqb_last_error(void);
FQB_API const char* fqb_status_name(fqb_status s);
FQB_API void fqb_free(char* s);

/* Reduces a polynomial system {"ring","vars","polys"} to a Boolean system.
 * options: {"representation": "standard"|"centered",
 *           "lift": "termcount"|"coeffsum"|"signedrange"} (may be NULL). */
FQB_API fqb_status fqb_reduce(const char* system_json, const char* options_json, fqb_system** out);
/* Loads a Boolean system previously written by fqb_system_json. */
FQB_API fqb_status fqb_system_load(const char* boolean_json, fqb_system** out);
FQB_API void fqb_system_destroy(fqb_system* sys);

FQB_API fqb_status fqb_system_json(const fqb_system* sys, char** out);
FQB_API fqb_status fqb_system_opb(const fqb_system* sys, char** opb, char** sidecar_json);
FQB_API size_t fqb_system_num_vars(const fqb_system* sys);
FQB_API size_t fqb_system_num_equations(const fqb_system* sys);

/* backend: {"backend","var_limit","time_limit","seed","symmetry_breaking",
 *           "external_command"} (may be NULL).
 * Response: {"status", "assignment"?, "solution"?, "reason"?, "nodes"}. */
FQB_API fqb_status fqb_system_solve(const fqb_system* sys, const char* backend_json, char** out);
/* Evaluates an assignment (array of 0/1): {"satisfied", "residuals"}. */
FQB_API fqb_status fqb_system_check(const fqb_system* sys, const char* assignment_json, char** out);

/* Called once per bisection step with a JSON object
 * {"alpha","mu","beta","outcome","value"?}. */
typedef void (*fqb_trace_fn)(const char* step_json, void* ctx);

/* Runs a named operation on a JSON request and writes a JSON response.
 * Operations: solve, optimize, pswn, lswn, sis, minsol, svp, cvp, qubo,
 * binlp, hnf, ntru_gen, ntru_attack, ntru_check. Optimizing operations
 * report each step through `trace` when it is non-NULL. */
FQB_API fqb_status fqb_call(const char* op, const char* request_json, fqb_trace_fn trace, void* ctx, char** out);

#ifdef __cplusplus
}
#endif

#endif
