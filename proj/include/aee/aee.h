/* Adjusted Edgeworth expansions for t-statistics: C API.
 *
 * Every function returning int gives AEE_OK on success or an error code; the
 * matching human-readable message for the most recent failure on the calling
 * thread is available from aee_error_message(). Strings handed out through
 * char** are heap-allocated and must be released with aee_string_free().
 */
#ifndef AEE_H
#define AEE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define AEE_OK 0
#define AEE_EINVAL 1  /* invalid argument or configuration */
#define AEE_EDOMAIN 2 /* numeric domain violation: degenerate data, unattainable p, ... */
#define AEE_EDERIVE 3 /* internal derivation failure */

/* Message for the most recent failing call on this thread; never NULL. */
const char* aee_error_message(void);

void aee_string_free(char* s);

/* Symbolic K-term expansion of one statistic kind.
 *
 * kind_token: one-biased | one-unbiased | one-moderated | two-pooled |
 *             welch-biased | welch-unbiased | two-moderated
 * order: number of correction terms K, 0..6.
 */
typedef struct aee_expansion aee_expansion;

int aee_expansion_create(const char* kind_token, int order, aee_expansion** out);
void aee_expansion_free(aee_expansion* e);

/* format: "json" or "text". lambda_form (nonzero) adds the ordinary
 * one-sample standardized-cumulant rendering; with_k_table (nonzero) adds the
 * sampling-cumulant coefficient table. */
int aee_expansion_render(const aee_expansion* e, const char* format, int lambda_form,
                         int with_k_table, char** out);

/* Expansion bound to numeric moments.
 *
 * moments_json (one-sample):
 *   {"n": int, "sigma2": real, "mu": [mu_2, ...], "source": "data"|"declared"}
 * moments_json (two-sample): {"x": {...}, "y": {...}} with the same entries.
 * prior_json: NULL, or {"d0": real, "s02": real}; required by the moderated
 * kinds and ignored by the rest.
 */
typedef struct aee_bound aee_bound;

int aee_bound_create(const aee_expansion* e, const char* moments_json, const char* prior_json,
                     aee_bound** out);
void aee_bound_free(aee_bound* b);

/* Any output pointer may be NULL to skip that field. */
int aee_bound_info(const aee_bound* b, double* n, double* r2, int* order);

/* F(x) with the given number of correction terms; terms = -1 means all K. */
int aee_eval_cdf(const aee_bound* b, double x, int terms, double* out);

/* Tail diagnostic over the grid [lo, hi] with the given step; pass step <= 0
 * for the default grid. Writes the TailReport JSON document. */
int aee_tail_report(const aee_bound* b, double lo, double hi, double step, char** json_out);

/* Quantile at p on one side ("left": x <= 0, "right": x >= 0); the requested
 * terms count must be usable on that side per the tail diagnostic. */
int aee_invert(const aee_bound* b, double p, const char* side, int terms, double* out);

/* Plug-in central moments mu_2..mu_{max_order} from raw data, written as a
 * one-sample moment-spec document (source "data"). */
int aee_moments_from_data(const double* xs, size_t len, int max_order, char** moments_json);

/* Population central moments mu_2..mu_{max_order} of a generator, written as
 * a one-sample moment-spec document with the given n (source "declared"). */
int aee_generator_moments(const char* gen_token, int n, int max_order, char** moments_json);

/* Monte Carlo sampling distribution of a statistic.
 *
 * gen_token: gamma:shape:scale[:centered] | normal:mean:sd |
 *            discrete:x1:p1:x2:p2[:...] (atom probabilities are exact
 *            rationals, e.g. 1/2, and must sum to one)
 * ny is ignored for one-sample kinds. threads = 0 picks a default; results
 * are identical for every thread count. */
typedef struct aee_empirical aee_empirical;

int aee_simulate(const char* gen_token, const char* kind_token, int nx, int ny, long reps,
                 uint64_t seed, const char* prior_json, int threads, aee_empirical** out);
void aee_empirical_free(aee_empirical* e);

/* Proportion of replicates <= x. */
int aee_empirical_at(const aee_empirical* e, double x, double* out);
long aee_empirical_reps(const aee_empirical* e);
long aee_empirical_resampled(const aee_empirical* e);
/* Borrowed pointer to the sorted replicate values; valid until the handle is
 * freed. len may be NULL. */
const double* aee_empirical_values(const aee_empirical* e, long* len);

#ifdef __cplusplus
}
#endif

#endif /* AEE_H */
