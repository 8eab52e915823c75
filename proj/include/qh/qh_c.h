#ifndef QH_C_H
#define QH_C_H

/* C interface to the exact quantum-cohomology toolkit.
 *
 * Usage pattern:
 *   qh_session* s = qh_session_new();
 *   char* json = NULL;
 *   if (qh_mzv_eval(s, "2,1", 1000, 0, &json) == QH_OK) { ...; qh_string_free(json); }
 *   else fprintf(stderr, "%s\n", qh_last_error(s));
 *   qh_session_free(s);
 *
 * Every query fills *out_json with a malloc'd UTF-8 JSON document (release it
 * with qh_string_free) and returns QH_OK, or returns an error status and
 * leaves *out_json untouched; the message is then available from
 * qh_last_error until the next call on the same session.  Exact rationals
 * appear in the JSON as "p/q" strings; floating-point values appear as
 * {"value": "<decimal>", "precision_bits": n} objects.  Output is
 * deterministic: the same inputs under the same configuration produce
 * byte-identical documents.
 *
 * Sessions are not thread-safe; use one session per thread.  The numeric
 * configuration (qh_configure) is process-wide.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qh_session qh_session;

typedef enum qh_status {
  QH_OK = 0,
  QH_E_USAGE = 1,       /* malformed input or unknown name */
  QH_E_DOMAIN = 2,      /* input outside a function's domain */
  QH_E_SINGULAR = 3,    /* exact linear algebra hit a singular system */
  QH_E_UNSUPPORTED = 4, /* outside the implemented regime */
  QH_E_INTERNAL = 5     /* unexpected failure */
} qh_status;

/* Library version string, static storage. */
const char* qh_version(void);

qh_session* qh_session_new(void);
void qh_session_free(qh_session* s);

/* Message for the most recent failing call on this session ("" after
 * success).  Owned by the session; valid until its next call. */
const char* qh_last_error(const qh_session* s);

/* Release a string returned through an out_json parameter. */
void qh_string_free(char* s);

/* Update the process-wide numeric configuration.  Pass precision_digits <= 0,
 * exact_crossover <= 0, window_exponent <= 0, seed == 0, or workers <= 0 to
 * keep the current value of that field. */
qh_status qh_configure(qh_session* s, int precision_digits, long exact_crossover,
                       double window_exponent, unsigned long long seed, int workers);

/* Space names accepted everywhere below: "twistor" or "cpn:N" with N >= 1. */

/* Ring model dump: basis, degrees, Chern character, and the first-Chern-class
 * multiplication matrix with its characteristic polynomial at the given
 * exact parameters (q defaults to "1", chi to "-1" when NULL). */
qh_status qh_space_dump(qh_session* s, const char* space, const char* q,
                        const char* chi, char** out_json);

/* Nested harmonic sums.  index is a comma-separated exponent list, largest
 * summation variable first, e.g. "2,1"; weak != 0 selects the weak (>=)
 * nesting.  Evaluates at cutoff d with the session's working precision and
 * includes the exact rational value for d <= 100. */
qh_status qh_mzv_eval(qh_session* s, const char* index, long d, int weak,
                      char** out_json);

/* Expansion of a weak nested sum as an exact integer combination of strict
 * ones, valid termwise at every cutoff. */
qh_status qh_mzv_expand(qh_session* s, const char* index, char** out_json);

/* Degree-d J-series coefficient.  For "twistor": the four alpha-components
 * plus the chi-component; for "cpn:N": the h-power coefficients at cutoff d.
 * normalized != 0 rescales by (d!)^2 into the cutoff-product normalization. */
qh_status qh_j_coefficient(qh_session* s, const char* space, long d,
                           int normalized, char** out_json);

/* Limit verdict table at cutoff n: measured coefficient limits against their
 * closed-form targets.  tolerance is an exact number string (NULL for the
 * default: scale 10 for "twistor", flat 1/1000 for "cpn:N").  For "twistor"
 * it scales per-row decay bounds, and richardson != 0 adds a one-step 1/n
 * elimination using the half cutoff; richardson is rejected for "cpn:N". */
qh_status qh_gamma_report(qh_session* s, const char* space, long n,
                          const char* tolerance, int richardson, char** out_json);

/* Peak-concentration scan of a factorial-ratio series.  alphas/a/betas/b are
 * comma-separated exact numbers ("" or NULL for empty); xs lists evaluation
 * points; nu in (0, 1/2] sets the window exponent (NULL for "2/5"); k and
 * bseq ("const1", "harmonic", "symsum", "log1p_pow") drive the peaking-defect
 * column.  fit != 0 appends an exp(-A x^B) fit of the tail ratios.  Rows
 * report head/tail mass ratios, the defect, and the saddle ratio (null where
 * the saddle comparison is not defined). */
qh_status qh_peaks_scan(qh_session* s, const char* alphas, const char* a,
                        const char* betas, const char* b, const char* xs,
                        const char* nu, long k, const char* bseq, int fit,
                        char** out_json);

/* Formal-connection classification report.  For "twistor", block selects
 * "main" (8-dim) or "y" (4-dim, q only); for "cpn:N" pass block = NULL or
 * "full".  q and chi are exact number strings (defaults "1" and "-1"). */
qh_status qh_dmod_report(qh_session* s, const char* space, const char* block,
                         const char* q, const char* chi, char** out_json);

/* Irregularity of a differential operator written as semicolon-separated
 * "d<k>:<rational function in u>" terms, e.g. "d2:1; d1:1/u^2; d0:u^3". */
qh_status qh_dmod_irregularity(qh_session* s, const char* op, char** out_json);

/* Composite release checks (criteria 1..9): run one, or all that apply to
 * the selected spaces.  Row-level results are in the JSON; all_pass (may be
 * NULL) receives 1 only if every selected criterion passed. */
qh_status qh_verify_criterion(qh_session* s, int index, char** out_json);
qh_status qh_verify_all(qh_session* s, int projective, int twistor,
                        int* all_pass, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* QH_C_H */
