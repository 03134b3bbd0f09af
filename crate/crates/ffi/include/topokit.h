#ifndef TOPOKIT_H
#define TOPOKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum TkStatus {
  TK_OK = 0,
  TK_NULL_POINTER = 1,
  TK_INVALID_UTF8 = 2,
  TK_PARSE_ERROR = 3,
  TK_INVALID_ARGUMENT = 4,
  TK_PARAMETER_MISMATCH = 5,
  TK_BUDGET_EXCEEDED = 6,
  TK_BUFFER_TOO_SMALL = 7,
  TK_OPERATION_FAILED = 8,
  TK_PANIC = 9,
} TkStatus;

/**
 * A simplicial complex.
 */
typedef struct TkComplex TkComplex;

/**
 * An element of a Higman-Thompson group, as a reduced tree pair.
 */
typedef struct TkTreePair TkTreePair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *tk_version(void);

/**
 * Length of the last error message on this thread, including the NUL; 0
 * if there is none.
 */
size_t tk_last_error_length(void);

/**
 * Copies the last error message of this thread into `buf`.
 *
 * # Safety
 * `buf` must be valid for `len` bytes; `needed` may be null.
 */
enum TkStatus tk_last_error_message(char *buf, size_t len, size_t *needed);

/**
 * Builds a complex from facets given as a flat vertex array: facet `i` is
 * the next `sizes[i]` entries of `vertices`.
 *
 * # Safety
 * `vertices` must hold the sum of `sizes`, `sizes` must hold `nfacets`
 * entries, `out` must be writable.
 */
enum TkStatus tk_complex_from_facets(const uint32_t *vertices,
                                     const size_t *sizes,
                                     size_t nfacets,
                                     struct TkComplex **out_complex);

/**
 * Parses a complex document (`"kind": "complex"`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_complex` must be writable.
 */
enum TkStatus tk_complex_from_json(const char *json, struct TkComplex **out_complex);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards; null is a no-op.
 */
void tk_complex_free(struct TkComplex *c);

/**
 * Serializes a complex as a JSON document.
 *
 * # Safety
 * `c` must be a live handle; `buf` valid for `len` bytes; `needed` may be null.
 */
enum TkStatus tk_complex_to_json(const struct TkComplex *c, char *buf, size_t len, size_t *needed);

/**
 * Dimension; -1 for the empty complex.
 *
 * # Safety
 * `c` must be a live handle and `out_dim` writable.
 */
enum TkStatus tk_complex_dim(const struct TkComplex *c, int32_t *out_dim);

/**
 * Number of simplices in dimension `k`.
 *
 * # Safety
 * `c` must be a live handle and `out_count` writable.
 */
enum TkStatus tk_complex_count(const struct TkComplex *c, int32_t k, size_t *out_count);

/**
 * # Safety
 * `c` must be a live handle and `out_chi` writable.
 */
enum TkStatus tk_complex_euler_characteristic(const struct TkComplex *c, int64_t *out_chi);

/**
 * Reduced Betti number and number of torsion coefficients in degree `k`.
 *
 * # Safety
 * `c` must be a live handle; both out pointers writable (`out_torsion` may be null).
 */
enum TkStatus tk_complex_homology(const struct TkComplex *c,
                                  size_t k,
                                  size_t *out_betti,
                                  size_t *out_torsion);

/**
 * Homological connectivity: -2 empty, -1 disconnected, `INT32_MAX` acyclic.
 *
 * # Safety
 * `c` must be a live handle and `out_hconn` writable.
 */
enum TkStatus tk_complex_hconn(const struct TkComplex *c, int32_t *out_hconn);

/**
 * Weakly Cohen-Macaulay test of dimension `n`.
 *
 * # Safety
 * `c` must be a live handle and `out_holds` writable.
 */
enum TkStatus tk_complex_wcm(const struct TkComplex *c, int32_t n, bool *out_holds);

/**
 * Parses a tree pair from parenthesis forests and a leaf permutation, and
 * reduces it.
 *
 * # Safety
 * `domain` and `range` must be NUL-terminated; `perm` must hold `nperm`
 * entries; `out_pair` writable.
 */
enum TkStatus tk_tree_pair_parse(uint32_t d,
                                 const char *domain,
                                 const char *range,
                                 const size_t *perm,
                                 size_t nperm,
                                 struct TkTreePair **out_pair);

/**
 * The identity of `V_{d,r}`.
 *
 * # Safety
 * `out_pair` must be writable.
 */
enum TkStatus tk_tree_pair_identity(uint32_t d, uint32_t r, struct TkTreePair **out_pair);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards; null is a no-op.
 */
void tk_tree_pair_free(struct TkTreePair *g);

/**
 * `a ∘ b`, applying `b` first.
 *
 * # Safety
 * `a`, `b` must be live handles; `out_pair` writable.
 */
enum TkStatus tk_tree_pair_compose(const struct TkTreePair *a,
                                   const struct TkTreePair *b,
                                   struct TkTreePair **out_pair);

/**
 * # Safety
 * `g` must be a live handle; `out_pair` writable.
 */
enum TkStatus tk_tree_pair_inverse(const struct TkTreePair *g, struct TkTreePair **out_pair);

/**
 * Normal-form equality.
 *
 * # Safety
 * `a`, `b` must be live handles; `out_equal` writable.
 */
enum TkStatus tk_tree_pair_equal(const struct TkTreePair *a,
                                 const struct TkTreePair *b,
                                 bool *out_equal);

/**
 * Image of an address written `root:word`, e.g. `0:0110`.
 *
 * # Safety
 * `g` must be a live handle; `address` NUL-terminated; `buf` valid for `len` bytes.
 */
enum TkStatus tk_tree_pair_act(const struct TkTreePair *g,
                               const char *address,
                               char *buf,
                               size_t len,
                               size_t *needed);

/**
 * Text form `domain -> range [perm]`.
 *
 * # Safety
 * `g` must be a live handle; `buf` valid for `len` bytes.
 */
enum TkStatus tk_tree_pair_to_string(const struct TkTreePair *g,
                                     char *buf,
                                     size_t len,
                                     size_t *needed);

/**
 * Runs the command-line front end on `args` (without the program name),
 * reading inputs from the file system. The report goes into `buf` and the
 * exit code into `out_exit`.
 *
 * # Safety
 * `args` must hold `nargs` NUL-terminated strings; `buf` valid for `len`
 * bytes; `out_exit` writable.
 */
enum TkStatus tk_cli_run(const char *const *args,
                         size_t nargs,
                         char *buf,
                         size_t len,
                         size_t *needed,
                         int32_t *out_exit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPOKIT_H */
