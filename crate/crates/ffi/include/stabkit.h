#ifndef STABKIT_H
#define STABKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum StkStatus {
  STK_STATUS_OK = 0,
  STK_STATUS_NULL_POINTER = 1,
  STK_STATUS_INVALID_UTF8 = 2,
  // Malformed text input (code file, Pauli string, built-in name).
  STK_STATUS_PARSE = 3,
  // Well-formed input that fails validation, e.g. anticommuting generators.
  STK_STATUS_INVALID = 4,
  // The syndrome has no entry in the table.
  STK_STATUS_UNKNOWN_SYNDROME = 5,
  // A length or size argument does not match the code.
  STK_STATUS_BAD_LENGTH = 6,
  // The distance exceeds the requested weight cap.
  STK_STATUS_ABOVE_CAP = 7,
  // An internal panic was caught at the boundary.
  STK_STATUS_INTERNAL = 8,
} StkStatus;

// Opaque stabilizer code.
typedef struct StkCode StkCode;

// Opaque lookup-table decoder.
typedef struct StkTable StkTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next `stk_*` call on the same thread; do not free it.
const char *stk_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from a `stk_*` out-parameter and not be freed twice.
void stk_string_free(char *s);

// Creates one of the built-in codes: "shor9", "steane7" or "five_qubit".
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum StkStatus stk_code_builtin(const char *name, struct StkCode **out);

// Parses a code in the `.stab` text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum StkStatus stk_code_parse(const char *text, struct StkCode **out);

// Releases a code. Null is ignored.
//
// # Safety
// `code` must come from `stk_code_builtin` or `stk_code_parse`.
void stk_code_free(struct StkCode *code);

// Number of physical qubits.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_code_num_qubits(const struct StkCode *code, uintptr_t *out);

// Number of stabilizer generators (the syndrome length).
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_code_num_generators(const struct StkCode *code, uintptr_t *out);

// Number of encoded qubits.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_code_num_logical(const struct StkCode *code, uintptr_t *out);

// Exhaustive distance up to `weight_cap`. Returns `STK_STATUS_ABOVE_CAP`
// when no logical operator of weight `<= weight_cap` exists.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_code_distance(const struct StkCode *code, uintptr_t weight_cap, uintptr_t *out);

// Writes the code in `.stab` text format to `*out`.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_code_to_string(const struct StkCode *code, char **out);

// Syndrome of a Pauli string such as "XIZII" or "-iY". Writes one byte
// (0 or 1) per generator into `bits`, which must hold `len` bytes with
// `len >= stk_code_num_generators`.
//
// # Safety
// `code` must be a live handle, `pauli` a NUL-terminated string and `bits`
// valid for `len` writes.
enum StkStatus stk_code_syndrome(const struct StkCode *code,
                                 const char *pauli,
                                 uint8_t *bits,
                                 uintptr_t len);

// Builds the minimum-weight lookup table for errors of weight `<= t`.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum StkStatus stk_table_build(const struct StkCode *code, uintptr_t t, struct StkTable **out);

// Number of distinct syndromes in the table.
//
// # Safety
// `table` must be a live handle and `out` a valid pointer.
enum StkStatus stk_table_len(const struct StkTable *table, uintptr_t *out);

// Looks up the correction for a syndrome given as `len` bytes of 0/1 and
// writes it as a Pauli string to `*out`.
//
// # Safety
// `table` must be a live handle, `bits` valid for `len` reads and `out` a
// valid pointer.
enum StkStatus stk_table_decode(const struct StkTable *table,
                                const uint8_t *bits,
                                uintptr_t len,
                                char **out);

// Releases a table. Null is ignored.
//
// # Safety
// `table` must come from `stk_table_build`.
void stk_table_free(struct StkTable *table);

// Quantum Hamming bound for `[[n, k]]` correcting `t` errors, evaluated
// exactly. `*satisfied` is set to 1 or 0.
//
// # Safety
// `satisfied` must be a valid pointer.
enum StkStatus stk_hamming_bound(uintptr_t n, uintptr_t k, uintptr_t t, uint8_t *satisfied);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STABKIT_H */
