/* C interface to the symstate library. Generated by cbindgen; do not edit. */

#ifndef SYMSTATE_H
#define SYMSTATE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum SymstateStatus {
  SYMSTATE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SYMSTATE_STATUS_NULL_POINTER = 1,
  /**
   * A parameter was out of range or malformed.
   */
  SYMSTATE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An input matrix was not Hermitian where required.
   */
  SYMSTATE_STATUS_NOT_HERMITIAN = 3,
  /**
   * An input matrix was not a valid state.
   */
  SYMSTATE_STATUS_NOT_A_STATE = 4,
  /**
   * A file or string could not be parsed.
   */
  SYMSTATE_STATUS_PARSE_ERROR = 5,
  /**
   * Underlying I/O failed.
   */
  SYMSTATE_STATUS_IO_ERROR = 6,
  /**
   * An output buffer was too small.
   */
  SYMSTATE_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * Unexpected internal failure.
   */
  SYMSTATE_STATUS_INTERNAL = 8,
} SymstateStatus;

/**
 * Invariance law selector.
 */
typedef enum SymstateLaw {
  SYMSTATE_LAW_U_UBAR = 0,
  SYMSTATE_LAW_UU = 1,
} SymstateLaw;

/**
 * PPT verdict method selector.
 */
typedef enum SymstateMethod {
  SYMSTATE_METHOD_DENSE = 0,
  SYMSTATE_METHOD_BLOCKED = 1,
} SymstateMethod;

/**
 * Opaque dense complex matrix handle.
 */
typedef struct SymstateMatrix SymstateMatrix;

/**
 * Result of a PPT check.
 */
typedef struct SymstatePptReport {
  /**
   * 1 when the partial transpose is positive semidefinite.
   */
  int is_ppt;
  double min_eig_rho;
  double min_eig_gamma;
} SymstatePptReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Writes the last error message for this thread into `buf` and returns
 * the status of the copy. Safe to call with an empty history.
 *
 * # Safety
 * `buf` must point to at least `len` writable bytes.
 */
enum SymstateStatus symstate_last_error_message(char *buf, size_t len);

/**
 * Frees a matrix handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle returned by this crate, freed only once.
 */
void symstate_matrix_free(struct SymstateMatrix *m);

/**
 * Number of rows of a matrix handle (0 for null).
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t symstate_matrix_rows(const struct SymstateMatrix *m);

/**
 * Number of columns of a matrix handle (0 for null).
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t symstate_matrix_cols(const struct SymstateMatrix *m);

/**
 * Reads one entry (0-based indices) into `re`/`im`.
 *
 * # Safety
 * `m` must be a live handle; `re` and `im` must be writable.
 */
enum SymstateStatus symstate_matrix_get(const struct SymstateMatrix *m,
                                        size_t row,
                                        size_t col,
                                        double *re,
                                        double *im);

/**
 * Builds the correlated two-qutrit state at mixing parameter `a`.
 *
 * # Safety
 * `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_horodecki(double a, struct SymstateMatrix **out);

/**
 * Representation with the `12|3` symmetry (b,c block on {|11>, |12>}).
 *
 * # Safety
 * `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_horodecki_prime(double a, struct SymstateMatrix **out);

/**
 * Representation with the `1|23` symmetry (b,c block on {|22>, |23>}).
 *
 * # Safety
 * `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_horodecki_dprime(double a, struct SymstateMatrix **out);

/**
 * The d (x) d generalization correlating the pair {1, d}.
 *
 * # Safety
 * `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_generalized_horodecki(size_t d, double a, struct SymstateMatrix **out);

/**
 * Partial transposition on the second tensor factor.
 *
 * # Safety
 * `m` must be a live handle; `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_partial_transpose(const struct SymstateMatrix *m,
                                               struct SymstateMatrix **out);

/**
 * Realignment map of a bipartite matrix.
 *
 * # Safety
 * `m` must be a live handle; `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_realign(const struct SymstateMatrix *m, struct SymstateMatrix **out);

/**
 * Conjugation by a local permutation on both factors. `perm` holds the
 * 1-based images of 1..=len.
 *
 * # Safety
 * `m` must be a live handle; `perm` must point to `len` entries; `out`
 * must be a writable pointer slot.
 */
enum SymstateStatus symstate_conjugate(const struct SymstateMatrix *m,
                                       const size_t *perm,
                                       size_t len,
                                       struct SymstateMatrix **out);

/**
 * Projects onto the invariant set of the phase subgroup given by a
 * partition in bar syntax (e.g. `"13|2"`).
 *
 * # Safety
 * `m` must be a live handle; `partition` must be a NUL-terminated string;
 * `out` must be a writable pointer slot.
 */
enum SymstateStatus symstate_twirl(const struct SymstateMatrix *m,
                                   const char *partition,
                                   enum SymstateLaw law,
                                   struct SymstateMatrix **out);

/**
 * Mask-based invariance test; writes 1 or 0 into `invariant`.
 *
 * # Safety
 * `m` must be a live handle; `partition` must be a NUL-terminated string;
 * `invariant` must be writable.
 */
enum SymstateStatus symstate_is_invariant(const struct SymstateMatrix *m,
                                          const char *partition,
                                          enum SymstateLaw law,
                                          double tol,
                                          int *invariant);

/**
 * Finds the finest invariant partition (d <= 6) and writes its bar-syntax
 * form into `buf`.
 *
 * # Safety
 * `m` must be a live handle; `buf` must point to `len` writable bytes.
 */
enum SymstateStatus symstate_finest_partition(const struct SymstateMatrix *m,
                                              enum SymstateLaw law,
                                              double tol,
                                              char *buf,
                                              size_t len);

/**
 * PPT check; fills `report`.
 *
 * # Safety
 * `m` must be a live handle; `report` must be writable.
 */
enum SymstateStatus symstate_ppt_check(const struct SymstateMatrix *m,
                                       enum SymstateMethod method,
                                       double tol,
                                       struct SymstatePptReport *report);

/**
 * Realignment (CCNR) value of a state.
 *
 * # Safety
 * `m` must be a live handle; `value` must be writable.
 */
enum SymstateStatus symstate_ccnr(const struct SymstateMatrix *m, double *value);

/**
 * Smallest eigenvalue of a Hermitian matrix.
 *
 * # Safety
 * `m` must be a live handle; `value` must be writable.
 */
enum SymstateStatus symstate_min_eigenvalue(const struct SymstateMatrix *m, double *value);

/**
 * Reads a DMAT1 file into a new handle.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be a writable
 * pointer slot.
 */
enum SymstateStatus symstate_matrix_read(const char *path, struct SymstateMatrix **out);

/**
 * Writes a handle to a DMAT1 file.
 *
 * # Safety
 * `m` must be a live handle; `path` must be a NUL-terminated string.
 */
enum SymstateStatus symstate_matrix_write(const struct SymstateMatrix *m, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMSTATE_H */
