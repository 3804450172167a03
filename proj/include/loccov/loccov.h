/*
 * loccov — a laboratory for locally covariant field theory on finite
 * circle lattices.
 *
 * C interface of the shared library. All objects are opaque handles; all
 * functions return a status code and report details through
 * loccov_last_error(). Strings returned through out-parameters are owned
 * by the caller and released with loccov_string_free().
 */
#ifndef LOCCOV_H
#define LOCCOV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum loccov_status {
  LOCCOV_OK = 0,
  LOCCOV_ERR_INVALID_ARGUMENT = 1,
  LOCCOV_ERR_PARSE = 2,
  LOCCOV_ERR_DOMAIN = 3,
  LOCCOV_ERR_IO = 4,
  LOCCOV_ERR_INTERNAL = 5
} loccov_status;

typedef struct loccov_spacetime loccov_spacetime;
typedef struct loccov_report loccov_report;

const char* loccov_version(void);
const char* loccov_status_name(loccov_status s);

/* Thread-local message describing the most recent failure. */
const char* loccov_last_error(void);

void loccov_string_free(char* s);

/* ----- spacetimes -------------------------------------------------------- */

/* json: {"N":int, "T":int, "mu": "p/q" | [[t,x,"p/q"],...],
          "mu_default": "p/q", "carrier": [[t,x],...]} */
loccov_status loccov_spacetime_from_json(const char* json, loccov_spacetime** out);
void loccov_spacetime_free(loccov_spacetime* m);
loccov_status loccov_spacetime_dims(const loccov_spacetime* m, int* n, int* t);

/* points_json: [[t,x],...]; the result is written as [[t,x],...]. */
loccov_status loccov_causal_future_json(const loccov_spacetime* m, const char* points_json,
                                        char** out_json);
loccov_status loccov_causal_past_json(const loccov_spacetime* m, const char* points_json,
                                      char** out_json);
loccov_status loccov_causal_complement_json(const loccov_spacetime* m,
                                            const char* points_json, char** out_json);
loccov_status loccov_domain_of_dependence_json(const loccov_spacetime* m,
                                               const char* points_json, char** out_json);

/* ----- experiment runner -------------------------------------------------- */

/* suite: one of "causal-appendix", "subobject-laws", "kg-functor",
   "rce-laws", "nets", "dynlocal", "spass-demo", "all".
   config_json: experiment configuration document ("{}" for defaults).
   jobs: maximal number of concurrent checks (>=1). */
loccov_status loccov_run_suite(const char* suite, const char* config_json, uint64_t seed,
                               int jobs, loccov_report** out);

loccov_status loccov_report_from_json(const char* json, loccov_report** out);
loccov_status loccov_report_to_json(const loccov_report* r, char** out_json);
loccov_status loccov_report_summary(const loccov_report* r, int* passed, int* failed,
                                    int* flagged);
/* Writes checks.csv and dims.csv into out_dir. */
loccov_status loccov_report_write_tables(const loccov_report* r, const char* out_dir);
void loccov_report_free(loccov_report* r);

#ifdef __cplusplus
}
#endif

#endif /* LOCCOV_H */
