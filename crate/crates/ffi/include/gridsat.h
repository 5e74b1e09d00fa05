/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GRIDSAT_H
#define GRIDSAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_UTF8 = 2,
  GS_STATUS_PARSE_ERROR = 3,
  // The input contains an empty clause.
  GS_STATUS_TRIVIALLY_UNSAT = 4,
  GS_STATUS_ORACLE_LIMIT = 5,
  GS_STATUS_ENGINE_ERROR = 6,
  GS_STATUS_FORMAT_ERROR = 7,
  GS_STATUS_BUFFER_TOO_SMALL = 8,
  GS_STATUS_INVALID_ARGUMENT = 9,
  GS_STATUS_PANIC = 10,
} GsStatus;

// Solver verdict, numbered like the command-line exit codes.
typedef enum GsVerdict {
  // The engine claimed SAT but no model could be extracted.
  GS_VERDICT_UNKNOWN = 0,
  GS_VERDICT_SAT = 10,
  GS_VERDICT_UNSAT = 20,
} GsVerdict;

// Engine verdict on a matrix.
typedef enum GsDecision {
  GS_DECISION_UNSAT = 0,
  GS_DECISION_SAT_CLAIM = 1,
} GsDecision;

typedef enum GsVariant {
  GS_VARIANT_BASIC = 0,
  GS_VARIANT_ASYNC = 1,
  GS_VARIANT_TRIANGULAR = 2,
  GS_VARIANT_SQUARE = 3,
} GsVariant;

// A parsed formula.
typedef struct GsCnf GsCnf;

// A compatibility matrix.
typedef struct GsMatrix GsMatrix;

typedef struct GsStats {
  enum GsDecision decision;
  size_t sweeps;
  uint64_t box_updates;
  bool early_exit;
} GsStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or an empty string.
// Valid until the next failing call on the same thread.
const char *gs_last_error(void);

// Parses DIMACS text into `*out`. An empty clause yields
// `GS_STATUS_TRIVIALLY_UNSAT` and no handle.
//
// # Safety
// `text` must be a nul-terminated string and `out` a writable pointer.
enum GsStatus gs_cnf_parse(const char *text, struct GsCnf **out);

// # Safety
// `cnf` must be null or a handle from [`gs_cnf_parse`] not yet freed.
void gs_cnf_free(struct GsCnf *cnf);

// Declared variable count, or 0 for a null handle.
//
// # Safety
// `cnf` must be null or a live handle.
uint32_t gs_cnf_num_vars(const struct GsCnf *cnf);

// Clause count after normalization, or 0 for a null handle.
//
// # Safety
// `cnf` must be null or a live handle.
size_t gs_cnf_num_clauses(const struct GsCnf *cnf);

// Decides `cnf` with `variant` (a [`GsVariant`] value) and, on a SAT
// claim, extracts a model into `model` as DIMACS literals, one per
// variable in order. `model` may be null when the formula has no
// variables.
//
// # Safety
// `cnf` must be a live handle, `verdict` writable, and `model` valid for
// `model_len` writes.
enum GsStatus gs_solve(const struct GsCnf *cnf,
                       uint32_t variant,
                       enum GsVerdict *verdict,
                       int32_t *model,
                       size_t model_len);

// Decides `cnf` by exhaustive enumeration; a model is written on SAT.
//
// # Safety
// Same contract as [`gs_solve`].
enum GsStatus gs_oracle(const struct GsCnf *cnf,
                        enum GsVerdict *verdict,
                        int32_t *model,
                        size_t model_len);

// Builds the compatibility matrix of `cnf`.
//
// # Safety
// `cnf` must be a live handle and `out` writable.
enum GsStatus gs_matrix_build(const struct GsCnf *cnf, struct GsMatrix **out);

// Reads a matrix in the text format produced by [`gs_matrix_serialize`].
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum GsStatus gs_matrix_deserialize(const char *text, struct GsMatrix **out);

// # Safety
// `matrix` must be null or a live matrix handle.
void gs_matrix_free(struct GsMatrix *matrix);

// Text form of `matrix`; release with [`gs_string_free`]. Null on a null
// handle.
//
// # Safety
// `matrix` must be null or a live handle.
char *gs_matrix_serialize(const struct GsMatrix *matrix);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void gs_string_free(char *s);

// Counts structural violations of `matrix` into `*violations`.
//
// # Safety
// `matrix` must be a live handle and `violations` writable.
enum GsStatus gs_matrix_check_structure(const struct GsMatrix *matrix, size_t *violations);

// Runs `variant` (a [`GsVariant`] value) on a copy of `matrix` with the default schedule. Writes
// run statistics to `*stats` and, when `fixpoint` is not null, a new
// handle holding the final matrix to `*fixpoint`.
//
// # Safety
// `matrix` must be a live handle, `stats` writable, `fixpoint` null or
// writable.
enum GsStatus gs_matrix_run(const struct GsMatrix *matrix,
                            uint32_t variant,
                            bool early_exit,
                            struct GsStats *stats,
                            struct GsMatrix **fixpoint);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDSAT_H */
