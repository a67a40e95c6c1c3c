/*
 * linca: exact analysis of one-dimensional linear cellular automata over Z_m.
 *
 * C interface. Objects are opaque handles owned by the caller and released
 * with the matching *_free function. Every fallible call returns a
 * linca_status; on failure linca_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on the same
 * thread). Strings returned through char** are released with
 * linca_string_free.
 */
#ifndef LINCA_H
#define LINCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LINCA_BUILDING)
#    define LINCA_API __declspec(dllexport)
#  else
#    define LINCA_API __declspec(dllimport)
#  endif
#else
#  define LINCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum linca_status {
    LINCA_OK = 0,
    LINCA_ERR_INVALID_ARGUMENT = 1,
    LINCA_ERR_PARSE = 2,
    LINCA_ERR_NOT_INVERTIBLE = 3,
    LINCA_ERR_MODULUS_MISMATCH = 4,
    LINCA_ERR_NOT_MIXING = 5,
    LINCA_ERR_BUDGET = 6,
    LINCA_ERR_IO = 7,
    LINCA_ERR_INTERNAL = 8
} linca_status;

typedef struct linca_rule linca_rule;
typedef struct linca_cylinder linca_cylinder;
typedef struct linca_measure linca_measure;

LINCA_API const char* linca_version(void);
LINCA_API const char* linca_last_error(void);
LINCA_API const char* linca_status_name(linca_status status);
LINCA_API void linca_string_free(char* s);

/* ---- rules ------------------------------------------------------------ */

/* f(x_l..x_{l+count-1}) = sum coeffs[i] x_{l+i} (mod m); coefficients are
 * reduced modulo m and trimmed. The all-zero rule is allowed. */
LINCA_API linca_status linca_rule_create(uint64_t m, int64_t l, const uint64_t* coeffs, size_t count,
                                         linca_rule** out);
/* Rule file text ("m=..\nl=..\ncoeffs=..,..\n"). source_name prefixes
 * diagnostics and may be NULL. */
LINCA_API linca_status linca_rule_parse(const char* text, const char* source_name, linca_rule** out);
LINCA_API linca_status linca_rule_load(const char* path, linca_rule** out);
LINCA_API void linca_rule_free(linca_rule* rule);

LINCA_API uint64_t linca_rule_modulus(const linca_rule* rule);
LINCA_API int64_t linca_rule_left(const linca_rule* rule);
LINCA_API int64_t linca_rule_right(const linca_rule* rule);
/* Coefficient at index i, 0 outside the window. */
LINCA_API uint64_t linca_rule_coeff(const linca_rule* rule, int64_t i);
LINCA_API int linca_rule_equal(const linca_rule* a, const linca_rule* b);

/* "f(x_l..x_r) = c_l*x_l + ... (mod m)" */
LINCA_API linca_status linca_rule_render(const linca_rule* rule, char** out);
/* Associated Laurent polynomial, "2*X^-3 + 1*X^-2 + 2*X^-1 (mod 4)". */
LINCA_API linca_status linca_rule_render_polynomial(const linca_rule* rule, char** out);
LINCA_API linca_status linca_rule_serialize(const linca_rule* rule, char** out);

LINCA_API linca_status linca_rule_inverse(const linca_rule* rule, linca_rule** out);
/* Local rule of T_f^n; n < 0 requires an invertible rule. */
LINCA_API linca_status linca_rule_iterate(const linca_rule* rule, int64_t n, linca_rule** out);
/* Rule of T_a o T_b (product of the associated polynomials). */
LINCA_API linca_status linca_rule_compose(const linca_rule* a, const linca_rule* b, linca_rule** out);
/* Coefficients reduced modulo d, d | m, d >= 2. */
LINCA_API linca_status linca_rule_project(const linca_rule* rule, uint64_t d, linca_rule** out);
/* One step on the cyclic lattice of size n (n >= rule width). cells and
 * out_cells may alias. */
LINCA_API linca_status linca_rule_apply(const linca_rule* rule, const uint64_t* cells, size_t n, uint64_t* out_cells);

/* ---- classification --------------------------------------------------- */

#define LINCA_MAX_PRIMES 16

typedef enum linca_verdict_kind {
    LINCA_VERDICT_NOT_INVERTIBLE = 0,
    LINCA_VERDICT_BERNOULLI_STRONG_MIXING = 1,
    LINCA_VERDICT_NON_ERGODIC = 2
} linca_verdict_kind;

typedef struct linca_verdict {
    linca_verdict_kind kind;
    size_t prime_count;                 /* distinct prime factors of m */
    uint64_t primes[LINCA_MAX_PRIMES];  /* ascending */
    int64_t jp[LINCA_MAX_PRIMES];       /* valid unless NOT_INVERTIBLE */
    uint64_t witness_prime;             /* NOT_INVERTIBLE only */
    size_t witness_index_count;         /* NOT_INVERTIBLE only: 0 or >= 2 */
    int cattaneo_ergodic;               /* general ergodicity test, all rules */
} linca_verdict;

LINCA_API linca_status linca_classify(const linca_rule* rule, linca_verdict* out);
/* key=value report (verdict=, invertible=, cattaneo_ergodic=, jp.<p>=, ...).
 * When U and V are both non-NULL and the rule is strong mixing, a
 * horizon= line is appended. */
LINCA_API linca_status linca_classify_report(const linca_rule* rule, const linca_cylinder* U,
                                             const linca_cylinder* V, char** out);
LINCA_API linca_status linca_support_bound(const linca_rule* rule, int64_t n, int64_t* lo, int64_t* hi);
LINCA_API linca_status linca_mixing_horizon(const linca_rule* rule, const linca_cylinder* U, const linca_cylinder* V,
                                            int64_t* out);
/* N = t p^{k-1} with t = max(1, ceil(2 ell / (p^{k-1} |j_p|))), max over p. */
LINCA_API linca_status linca_separation_time(const linca_rule* rule, int64_t ell, int64_t* out);

/* ---- cylinders and measures ------------------------------------------- */

LINCA_API linca_status linca_cylinder_create(int64_t start, const uint64_t* word, size_t len, linca_cylinder** out);
/* "[a1,a2,...,ak]@i1" */
LINCA_API linca_status linca_cylinder_parse(const char* text, linca_cylinder** out);
LINCA_API void linca_cylinder_free(linca_cylinder* c);
LINCA_API size_t linca_cylinder_length(const linca_cylinder* c);

LINCA_API void linca_measure_free(linca_measure* mu);
/* Value is numerator / base^exponent. */
LINCA_API linca_status linca_measure_numerator(const linca_measure* mu, char** out_decimal);
LINCA_API uint64_t linca_measure_base(const linca_measure* mu);
LINCA_API uint64_t linca_measure_exponent(const linca_measure* mu);
/* Numerator rescaled to denominator base^exponent; LINCA_ERR_INVALID_ARGUMENT
 * if that is not an integer. */
LINCA_API linca_status linca_measure_numerator_at(const linca_measure* mu, uint64_t exponent, char** out_decimal);
/* Lowest terms, "p/q". */
LINCA_API linca_status linca_measure_render(const linca_measure* mu, char** out);
/* -1, 0, 1 by value. */
LINCA_API int linca_measure_compare(const linca_measure* a, const linca_measure* b);
LINCA_API linca_status linca_measure_product(const linca_measure* a, const linca_measure* b, linca_measure** out);

LINCA_API linca_status linca_cylinder_measure(const linca_cylinder* U, uint64_t m, linca_measure** out);
/* mu(T^{-n} U  cap  V) */
LINCA_API linca_status linca_correlation(const linca_rule* rule, int64_t n, const linca_cylinder* U,
                                         const linca_cylinder* V, linca_measure** out);
/* mu(A_0 cap T^{-n_1} A_1 cap ... ), cylinder_count == gap_count + 1. */
LINCA_API linca_status linca_correlation_multi(const linca_rule* rule, const int64_t* gaps, size_t gap_count,
                                               const linca_cylinder* const* cylinders, size_t cylinder_count,
                                               linca_measure** out);
/* One measure per prime-power factor of m, written to outs[0..*count).
 * capacity must be >= the number of distinct primes of m. */
LINCA_API linca_status linca_factor_correlation(const linca_rule* rule, int64_t n, const linca_cylinder* U,
                                                const linca_cylinder* V, linca_measure** outs, size_t capacity,
                                                size_t* count);
/* Exact epsilon-independence defect of the join partitions; budget 0 means
 * the default of 2^22 cell pairs. */
LINCA_API linca_status linca_independence_defect(const linca_rule* rule, int64_t ell, int64_t n, int64_t N,
                                                 uint64_t budget, linca_measure** out);

#ifdef __cplusplus
}
#endif

#endif /* LINCA_H */
