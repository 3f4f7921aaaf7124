#ifndef PSTIEFEL_H
#define PSTIEFEL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  PS_STATUS_INVALID_ARGUMENT = 3,
  PS_STATUS_NOT_PRIMITIVE = 4,
  PS_STATUS_NOT_PRIME = 5,
  PS_STATUS_NOT_INVERTIBLE = 6,
  PS_STATUS_MISMATCH = 7,
  // A library invariant failed; this is a bug, not bad input.
  PS_STATUS_INTERNAL = 8,
  PS_STATUS_PANIC = 9,
} PsStatus;

typedef struct PsPresentation PsPresentation;

typedef struct PsSeries PsSeries;

typedef struct PsWeights PsWeights;

typedef struct PsSpanCertificate {
  uint64_t prime;
  size_t index;
  // Nonzero residue mod `prime`.
  uint64_t witness;
  size_t span_bound;
  size_t height;
} PsSpanCertificate;

typedef struct PsImmersionCertificate {
  uint64_t prime;
  size_t index;
  uint64_t witness;
  size_t certified_non_immersion_dim;
  size_t claimed_dim;
  size_t height;
} PsImmersionCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Owned by the library and
// valid until the next call on this thread.
const char *ps_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *ps_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and must not be freed twice.
void ps_string_free(char *s);

// Builds a primitive weight tuple from `len` integers.
//
// # Safety
// `values` must point to `len` readable integers; `out` must be writable.
enum PsStatus ps_weights_new(const int64_t *values, size_t len, struct PsWeights **out);

// Parses a comma-separated list of decimal integers such as `"1,-2"`.
//
// # Safety
// `csv` must be a NUL-terminated string; `out` must be writable.
enum PsStatus ps_weights_parse(const char *csv, struct PsWeights **out);

// # Safety
// `w` must be NULL or a handle from this library not yet freed.
void ps_weights_free(struct PsWeights *w);

// # Safety
// `w` must be a live handle.
size_t ps_weights_len(const struct PsWeights *w);

// `h_r(l)` as a decimal string.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PsStatus ps_weights_h(const struct PsWeights *w, size_t r, char **out);

// Series with `len` coefficients padded to `truncation` terms over `Z` (`modulus = 0`) or `Z/modulus`.
//
// # Safety
// `coeffs` must point to `len` readable integers; `out` must be writable.
enum PsStatus ps_series_new(const int64_t *coeffs,
                            size_t len,
                            size_t truncation,
                            uint64_t modulus,
                            struct PsSeries **out);

// # Safety
// `s` must be NULL or a handle from this library not yet freed.
void ps_series_free(struct PsSeries *s);

// # Safety
// `s` must be a live handle.
size_t ps_series_truncation(const struct PsSeries *s);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum PsStatus ps_series_mul(const struct PsSeries *a,
                            const struct PsSeries *b,
                            struct PsSeries **out);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_series_inv(const struct PsSeries *s, struct PsSeries **out);

// `s^e`; negative `e` inverts first.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_series_pow(const struct PsSeries *s, int64_t e, struct PsSeries **out);

// Coefficient of `x^i` as a decimal string.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_series_coeff(const struct PsSeries *s, size_t i, char **out);

// Human-readable form such as `1 - 3x + O(x^4)`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_series_to_string(const struct PsSeries *s, char **out);

// Total Chern class of the sum of line bundles with weights `w`.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PsStatus ps_total_chern(const struct PsWeights *w, size_t truncation, struct PsSeries **out);

// Total Chern class of a complement: the inverse of [`ps_total_chern`].
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PsStatus ps_complement_chern(const struct PsWeights *w,
                                  size_t truncation,
                                  struct PsSeries **out);

// Pontrjagin class of the tangent (`normal = false`) or stable normal bundle.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PsStatus ps_pontrjagin(size_t n,
                            const struct PsWeights *w,
                            uint64_t modulus,
                            size_t truncation,
                            bool normal,
                            struct PsSeries **out);

// Mod-`p` cohomology presentation of `P_l W_{n,k}` with `k` the number of weights.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PsStatus ps_presentation_new(size_t n,
                                  const struct PsWeights *w,
                                  uint64_t p,
                                  struct PsPresentation **out);

// # Safety
// `pres` must be NULL or a handle from this library not yet freed.
void ps_presentation_free(struct PsPresentation *pres);

// `N`, the height of `x`; 0 for a NULL handle.
//
// # Safety
// `pres` must be a live handle.
size_t ps_presentation_height(const struct PsPresentation *pres);

// Writes up to `cap` exterior generator degrees into `buf` and returns how many exist.
//
// # Safety
// `pres` must be a live handle; `buf` must have room for `cap` entries (or be NULL with `cap = 0`).
size_t ps_presentation_exterior_degrees(const struct PsPresentation *pres, size_t *buf, size_t cap);

// Text such as `Z/3[x]/(x^3) ⊗ Λ(y_4)`.
//
// # Safety
// `pres` must be a live handle; `out` must be writable.
enum PsStatus ps_presentation_to_string(const struct PsPresentation *pres, char **out);

// Span certificate at the odd prime `p` (or the best over odd primes `<= prime_bound`
// when `p = 0`). `*found` is false when no certificate exists.
//
// # Safety
// `w` must be a live handle; `out` and `found` must be writable.
enum PsStatus ps_span_certificate(size_t n,
                                  const struct PsWeights *w,
                                  uint64_t p,
                                  uint64_t prime_bound,
                                  struct PsSpanCertificate *out,
                                  bool *found);

// Immersion certificate, with the same prime conventions as [`ps_span_certificate`].
//
// # Safety
// `w` must be a live handle; `out` and `found` must be writable.
enum PsStatus ps_immersion_certificate(size_t n,
                                       const struct PsWeights *w,
                                       uint64_t p,
                                       uint64_t prime_bound,
                                       struct PsImmersionCertificate *out,
                                       bool *found);

// Runs the command-line interface on `argc` arguments (without the program name), e.g.
// `{"span", "--n", "7", "--weights", "1,2", "--prime", "7", "--json"}`. Captured output
// goes to `*out_stdout` and `*out_stderr`; the process exit code to `*exit_code`.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; the out pointers must be writable.
enum PsStatus ps_cli_run(size_t argc,
                         const char *const *argv,
                         char **out_stdout,
                         char **out_stderr,
                         int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSTIEFEL_H */
