/*
 * qpure: purity-based entanglement and nonlocality criteria for
 * finite-dimensional multipartite quantum states.
 *
 * Plain C interface over the C++ core. Objects are opaque handles released
 * with the matching *_free function. Every call returns a qpure_status; on
 * failure qpure_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with qpure_string_free().
 */
#ifndef QPURE_QPURE_H
#define QPURE_QPURE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QPURE_BUILDING_LIBRARY)
#    define QPURE_API __declspec(dllexport)
#  else
#    define QPURE_API __declspec(dllimport)
#  endif
#else
#  define QPURE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpure_status {
  QPURE_OK = 0,
  QPURE_ERR_INVALID_ARGUMENT = 1,
  QPURE_ERR_INVALID_DIMENSION = 2,
  QPURE_ERR_INVALID_SUBSET = 3,
  QPURE_ERR_INVALID_PARTITION = 4,
  QPURE_ERR_INVALID_PURITY = 5,
  QPURE_ERR_INVALID_FRAME = 6,
  QPURE_ERR_NOT_HERMITIAN = 7,
  QPURE_ERR_TRACE_NOT_ONE = 8,
  QPURE_ERR_NOT_PSD = 9,
  QPURE_ERR_SIZE_LIMIT = 10,
  QPURE_ERR_INCOMPLETE_MAP = 11,
  QPURE_ERR_DIMENSION_MISMATCH = 12,
  QPURE_ERR_INAPPLICABLE = 13,
  QPURE_ERR_PARSE = 14,
  QPURE_ERR_IO = 15,
  QPURE_ERR_INVARIANT = 16,
  QPURE_ERR_INTERNAL = 17
} qpure_status;

typedef struct qpure_state qpure_state;

QPURE_API const char* qpure_version(void);
QPURE_API const char* qpure_status_name(qpure_status status);
/* Message of the last failed call on this thread; "" if none. */
QPURE_API const char* qpure_last_error(void);
QPURE_API void qpure_string_free(char* s);

/* --- states ------------------------------------------------------------ */

/* Row-major matrix of interleaved (re, im) pairs, 2*d*d doubles, d = prod(dims). */
QPURE_API qpure_status qpure_state_create(const size_t* dims, size_t n_dims, const double* re_im,
                                          qpure_state** out);
QPURE_API qpure_status qpure_state_from_json(const char* text, qpure_state** out);
QPURE_API qpure_status qpure_state_load(const char* path, qpure_state** out);
QPURE_API qpure_status qpure_state_save(const qpure_state* state, const char* path);
QPURE_API qpure_status qpure_state_to_json(const qpure_state* state, char** out);

/*
 * Named families:
 *   "bell"      name = phi+|phi-|psi+|psi-
 *   "werner"    a = omega, name = Bell state (default psi-)
 *   "bd"        a, b, c = t11, t22, t33
 *   "ghz"       n qubits, a = p (noise weight, 1 = pure GHZ)
 *   "mm"        n qubits, maximally mixed
 */
QPURE_API qpure_status qpure_state_named(const char* family, const char* name, size_t n, double a, double b,
                                         double c, qpure_state** out);

/* kind = "haar" | "hs" | "bures" | "fixed" (a = target purity for "fixed"). */
QPURE_API qpure_status qpure_state_random(const char* kind, const size_t* dims, size_t n_dims, double a,
                                          uint64_t seed, uint64_t stream, qpure_state** out);
QPURE_API void qpure_state_free(qpure_state* state);

QPURE_API qpure_status qpure_state_dim(const qpure_state* state, size_t* out);
QPURE_API qpure_status qpure_state_factors(const qpure_state* state, size_t* out);
QPURE_API qpure_status qpure_state_purity(const qpure_state* state, double* out);
/* Partition string "0,1|2": comma-joined factor indices per block, '|' between blocks. */
QPURE_API qpure_status qpure_state_negativity(const qpure_state* state, const char* block, double* out);
QPURE_API qpure_status qpure_tnorm2(const qpure_state* state, const char* partition, double* direct,
                                    double* from_purities);
QPURE_API qpure_status qpure_total_uncertainty(const qpure_state* state, const char* partition, double* direct,
                                               double* from_purities, double* combinations);

/* --- criteria ---------------------------------------------------------- */

/* JSON criterion report: purities per block subset, ‖t‖² by both routes,
 * delta_tilde, threshold, verdicts, CHSH and three-qudit GME results when applicable. */
QPURE_API qpure_status qpure_criterion_report(const qpure_state* state, const char* partition, char** json_out);

/* --- experiments ------------------------------------------------------- */

/*
 * family: werner | ghz | bd-geometry | nmeas | negativity | costs | moments
 * config_json: {"seed":..,"stream":..,"workers":..,"tolerances":{..}, plus family options:
 *   werner: grid; ghz: n, grid, partitions ("all" or "p1;p2"); bd-geometry: samples;
 *   nmeas: n, bins, states, shuffles; negativity: samples, min_negativity;
 *   costs: k, qubits (bool), dims ([..]); moments: dims ([..]), samples}
 * Writes <prefix>.csv and <prefix>.json unless prefix is NULL or empty; the
 * one-line summary is returned through summary_out (may be NULL).
 */
QPURE_API qpure_status qpure_sweep(const char* family, const char* config_json, const char* prefix,
                                   char** summary_out);

/* Runs every module's invariant suite. *passed is 1 iff all assertions hold. */
QPURE_API qpure_status qpure_validate(size_t samples, uint64_t seed, size_t workers, int* passed,
                                      size_t* assertions, char** digest_out);

#ifdef __cplusplus
}
#endif

#endif /* QPURE_QPURE_H */
