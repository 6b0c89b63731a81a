/* C interface of the tempera symbolic engine.
 *
 * Every entry point takes a context created from a catalog of cuspidal
 * symbols and communicates through NUL-terminated strings. Output buffers
 * are heap-allocated and owned by the caller; release them with
 * tempera_str_free. On any status other than TEMPERA_OK the error buffer
 * (when the pointer is given) receives a message.
 */
#ifndef TEMPERA_TEMPERA_H
#define TEMPERA_TEMPERA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tempera_ctx tempera_ctx;

typedef enum tempera_status {
    TEMPERA_OK = 0,
    TEMPERA_CHECK_FAILED = 1, /* the requested predicate is false */
    TEMPERA_ERR_PARSE = 2,
    TEMPERA_ERR_INVALID = 3,
    TEMPERA_ERR_DOMAIN = 4,
    TEMPERA_ERR_LIMIT = 5,
    TEMPERA_ERR_INTERNAL = 6
} tempera_status;

const char* tempera_version(void);

tempera_status tempera_ctx_new(const char* catalog_json, tempera_ctx** out, char** err);
void tempera_ctx_free(tempera_ctx* ctx);
void tempera_str_free(char* s);

/* M* expansion of a multisegment expression like "d(rho;-1/2..1/2)". */
tempera_status tempera_mstar(const tempera_ctx* ctx, const char* expr, int as_json, char** out,
                             char** err);

/* Jacquet-module over-approximation of the chain's parameter. filter != 0
 * applies the Jordan filter of the final triple. depth < 0 means the whole
 * chain. */
tempera_status tempera_mu_bound(const tempera_ctx* ctx, const char* chain_json, int filter,
                                long depth, long max_terms, int as_json, char** out, char** err);

/* Replays the chain; on success prints the resulting triple. */
tempera_status tempera_validate_chain(const tempera_ctx* ctx, const char* chain_json,
                                      int as_json, char** out, char** err);

/* Validates an admissible ("kind": "admissible") or tempered triple file.
 * Violations yield TEMPERA_ERR_INVALID with the list in err. */
tempera_status tempera_validate_triple(const tempera_ctx* ctx, const char* triple_json,
                                       int as_json, char** out, char** err);

/* Case analysis for the distinguished constituent of delta(rho,b) |x pi. */
tempera_status tempera_pi_delta(const tempera_ctx* ctx, const char* chain_json, const char* rho,
                                long b, int as_json, char** out, char** err);

/* All sign vectors of the induced tempered representation of a param file. */
tempera_status tempera_decompose(const tempera_ctx* ctx, const char* param_json, int as_json,
                                 char** out, char** err);

/* Moves one Jordan block of an admissible triple to `target` (down or up). */
tempera_status tempera_deform(const tempera_ctx* ctx, const char* triple_json, const char* rho,
                              long a, long target, int as_json, char** out, char** err);

/* Reducibility checks against an admissible triple: alpha is a half-integer
 * string ("3/2") for the point test, or NULL with b > 0 for the
 * delta(rho,b) test. Irreducible results return TEMPERA_CHECK_FAILED. */
tempera_status tempera_reduces(const tempera_ctx* ctx, const char* triple_json, const char* rho,
                               const char* alpha, long b, int as_json, char** out, char** err);

/* Equivalence of two tempered parameter files. */
tempera_status tempera_equiv(const tempera_ctx* ctx, const char* param_json_1,
                             const char* param_json_2, int as_json, char** out, char** err);

/* Genericity of a tempered parameter file. */
tempera_status tempera_generic(const tempera_ctx* ctx, const char* param_json, int as_json,
                               char** out, char** err);

/* Multiplicity replication for one of: "def-main", "def-even", "def-odd2",
 * "pr-def-t". Prints one row per random instance; any failing row yields
 * TEMPERA_CHECK_FAILED. */
tempera_status tempera_check_lemma(const tempera_ctx* ctx, const char* lemma, const char* base,
                                   unsigned long long seed, long count, long max_terms,
                                   int as_json, char** out, char** err);

/* Same check on one explicit instance (chain, rho, b); the pr-def-t family
 * has no explicit-instance form. */
tempera_status tempera_check_lemma_instance(const tempera_ctx* ctx, const char* lemma,
                                            const char* chain_json, const char* rho, long b,
                                            long max_terms, int as_json, char** out,
                                            char** err);

#ifdef __cplusplus
}
#endif

#endif /* TEMPERA_TEMPERA_H */
