/*
 * egonet: ego network analysis of longitudinal interaction logs.
 *
 * Plain C interface over the C++ core. Objects are opaque handles created and
 * destroyed through this API. Every fallible call returns an egonet_status;
 * on failure egonet_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread).
 */
#ifndef EGONET_EGONET_H
#define EGONET_EGONET_H

#include <stddef.h>
#include <stdint.h>

#if defined(EGONET_BUILDING_LIBRARY)
#define EGONET_API __attribute__((visibility("default")))
#else
#define EGONET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum egonet_status {
  EGONET_OK = 0,
  EGONET_ERR_INVALID_ARGUMENT = 1, /* bad option name/value or precondition */
  EGONET_ERR_IO = 2,               /* unreadable input, unwritable output */
  EGONET_ERR_PARSE = 3,            /* malformed config or table */
  EGONET_ERR_EMPTY_COHORT = 4,     /* no user survived filtering */
  EGONET_ERR_INTERNAL = 5
} egonet_status;

typedef enum egonet_hypothesis {
  EGONET_H0_NONPOSITIVE = 0, /* H0: mean <= 0 */
  EGONET_H0_NONNEGATIVE = 1  /* H0: mean >= 0 */
} egonet_hypothesis;

typedef struct egonet_pipeline egonet_pipeline;
typedef struct egonet_report egonet_report;
typedef struct egonet_scenario egonet_scenario;

EGONET_API const char* egonet_version(void);
EGONET_API const char* egonet_last_error(void);
EGONET_API const char* egonet_status_name(egonet_status status);

/* ---- analysis pipeline ------------------------------------------------- */

EGONET_API egonet_status egonet_pipeline_create(egonet_pipeline** out);
EGONET_API void egonet_pipeline_destroy(egonet_pipeline* pipeline);

/*
 * Sets one option. Keys (values are strings):
 *   input                 add an input file (repeatable)
 *   input_format          tsv | csv
 *   mention_mode          per-alter | first-alter
 *   anchor_date           YYYY-MM-DD
 *   num_periods           integer >= 2
 *   period_length         <n>y | <n>m | <n>d
 *   active_threshold      real > 0
 *   weight_denominator    period | relationship
 *   iit_scope             history | period
 *   bandwidth             auto | real > 0
 *   bandwidth_divisor     real > 0
 *   cluster_domain        log10 | raw
 *   tolerance             real > 0
 *   max_iters             integer >= 1
 *   bot_list              path
 *   outlier_mode          aggregate | per-period | off
 *   rank_mode             raw | normalized
 *   movement_denominator  stable | all
 *   alpha                 real in (0, 1)
 *   ci_level              real in (0, 1)
 *   dump_ties             true | false
 *   dump_snapshots        true | false
 *   output_dir            path
 *   seed                  unsigned integer (recorded in the manifest)
 */
EGONET_API egonet_status egonet_pipeline_set(egonet_pipeline* pipeline, const char* key,
                                             const char* value);

/* Runs ingest -> filtering -> weights -> clustering -> dynamics -> stats and
 * writes the report bundle to output_dir. *out may be NULL. */
EGONET_API egonet_status egonet_pipeline_run(const egonet_pipeline* pipeline, egonet_report** out);

EGONET_API void egonet_report_destroy(egonet_report* report);
EGONET_API size_t egonet_report_cohort_size(const egonet_report* report);
EGONET_API size_t egonet_report_records(const egonet_report* report);
EGONET_API size_t egonet_report_rejected_lines(const egonet_report* report);
/* Owned by the report. */
EGONET_API const char* egonet_report_cohort_json(const egonet_report* report);
EGONET_API const char* egonet_report_cohort_table(const egonet_report* report);

/* ---- synthetic generator ----------------------------------------------- */

EGONET_API egonet_status egonet_scenario_create(egonet_scenario** out);
EGONET_API void egonet_scenario_destroy(egonet_scenario* scenario);
/* Replaces the scenario with the JSON document at `path`. */
EGONET_API egonet_status egonet_scenario_load(egonet_scenario* scenario, const char* path);
/* Sets one scenario key from its JSON text, e.g. ("shock_period", "5"). */
EGONET_API egonet_status egonet_scenario_set(egonet_scenario* scenario, const char* key,
                                             const char* json_value);
EGONET_API egonet_status egonet_scenario_generate(const egonet_scenario* scenario, const char* path,
                                                  size_t* records_written);

/* ---- stats on existing tables ------------------------------------------ */

/* Reads an `ego_id,metric,periods,value` table (growth_rates.csv) and writes
 * a t-test table with both one-sided tests per (metric, periods). */
EGONET_API egonet_status egonet_stats_file(const char* input_csv, const char* output_csv, double alpha,
                                           double ci_level);

/* ---- numerical primitives ---------------------------------------------- */

/* modes: capacity n, filled in descending order; labels: capacity n. */
EGONET_API egonet_status egonet_mean_shift_1d(const double* values, size_t n, double bandwidth,
                                              double tolerance, int max_iters, double* modes,
                                              size_t* num_modes, size_t* labels);

EGONET_API egonet_status egonet_t_test(const double* samples, size_t n, egonet_hypothesis h0,
                                       double alpha, double* t_statistic, double* p_value,
                                       int* rejected);

EGONET_API egonet_status egonet_confidence_interval(const double* samples, size_t n, double level,
                                                    double* lower, double* upper);

#ifdef __cplusplus
}
#endif

#endif /* EGONET_EGONET_H */
