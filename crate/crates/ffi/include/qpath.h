#ifndef QPATH_H
#define QPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 1 to 5 match the `qpath` binary's exit codes.
 */
typedef enum {
  QP_STATUS_OK = 0,
  QP_STATUS_PARSE_ERROR = 1,
  QP_STATUS_SEMANTIC_ERROR = 2,
  QP_STATUS_VERIFICATION_FAILED = 3,
  QP_STATUS_RESOURCE_CAP = 4,
  QP_STATUS_INDEX_OUT_OF_RANGE = 5,
  /**
   * Null pointer, bad length or invalid UTF-8 in an argument.
   */
  QP_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  QP_STATUS_INTERNAL = 7,
} QpStatus;

typedef enum {
  QP_PART_REAL = 0,
  QP_PART_IMAG = 1,
} QpPart;

/**
 * Parsed document handle.
 */
typedef struct QpDocument QpDocument;

/**
 * Dense complex matrix handle.
 */
typedef struct QpMatrix QpMatrix;

typedef struct {
  double re;
  double im;
} QpComplex;

typedef struct {
  /**
   * Selected part of `<psi|U|psi>`.
   */
  double exact;
  double exact_p0;
  double sampled_p0;
  double estimate;
} QpHadamardResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *qp_last_error(void);

/**
 * Parses `len` bytes of document source.
 *
 * # Safety
 * `source` must point to `len` readable bytes and `out` must be writable.
 */
QpStatus qp_document_parse(const uint8_t *source, uintptr_t len, QpDocument **out);

/**
 * # Safety
 * `doc` must come from [`qp_document_parse`] or be null.
 */
void qp_document_free(QpDocument *doc);

/**
 * Runs a subcommand given as `argv` (subcommand name first, no program
 * name or file). On `Ok`, and on `VerificationFailed`, `*out_text`
 * receives the report; release it with [`qp_string_free`].
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `out_text` must be writable.
 */
QpStatus qp_run(const QpDocument *doc, const char *const *argv, uintptr_t argc, char **out_text);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void qp_string_free(char *s);

/**
 * Builds a `rows x cols` matrix from row-major interleaved `re, im` pairs
 * (`2 * rows * cols` doubles).
 *
 * # Safety
 * `data` must point to `2 * rows * cols` doubles; `out` must be writable.
 */
QpStatus qp_matrix_new(uintptr_t rows, uintptr_t cols, const double *data, QpMatrix **out);

/**
 * # Safety
 * `m` must come from [`qp_matrix_new`] or be null.
 */
void qp_matrix_free(QpMatrix *m);

/**
 * `<output| U_L ... U_1 |input>` as a sum over paths; `layers[0]` acts first.
 *
 * # Safety
 * `layers` must hold `n_layers` valid matrix handles; `out` must be writable.
 */
QpStatus qp_path_sum_amplitude(const QpMatrix *const *layers,
                               uintptr_t n_layers,
                               uintptr_t input,
                               uintptr_t output,
                               QpComplex *out);

/**
 * Runs the Hadamard test of `u` on the state given as `dim` interleaved
 * `re, im` pairs.
 *
 * # Safety
 * `u` must be a valid handle, `psi` must point to `2 * dim` doubles and
 * `out` must be writable.
 */
QpStatus qp_hadamard_test(const QpMatrix *u,
                          const double *psi,
                          uintptr_t dim,
                          QpPart part,
                          uint64_t shots,
                          uint64_t seed,
                          QpHadamardResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPATH_H */
