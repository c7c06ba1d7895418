/* C interface of the sojourn library. All functions return SJ_OK (0) on
 * success or an error code; sj_last_error() describes the most recent
 * failure on the calling thread. Handles are opaque and single-owner. */
#ifndef SOJOURN_SOJOURN_H
#define SOJOURN_SOJOURN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  SJ_OK = 0,
  SJ_ERR_CONFIG = 1,
  SJ_ERR_DOMAIN = 2,
  SJ_ERR_REGIME = 3,
  SJ_ERR_NUMERIC = 4,
  SJ_ERR_IO = 5,
  SJ_ERR_UNKNOWN = 6
};

/* Message for the last failing call on this thread; empty string if none. */
const char* sj_last_error(void);

typedef struct sj_experiment sj_experiment;

/* Loads and validates a JSON experiment config. NULL on failure. */
sj_experiment* sj_experiment_load(const char* config_path);

/* Overrides the config's master seed before running. */
int sj_experiment_set_seed(sj_experiment* exp, uint64_t seed);

/* Name of the configured study ("variance_scaling", ...). */
const char* sj_experiment_study(const sj_experiment* exp);

/* Runs the configured study. workers <= 0 picks hardware concurrency;
 * plots != 0 additionally emits SVG artifacts on write. */
int sj_experiment_run(sj_experiment* exp, int workers, int plots);

/* Theory-only predictions, no simulation. */
int sj_experiment_predict(sj_experiment* exp);

/* Writes result.json and the study CSVs into dir (NULL or "" means the
 * config's output_dir; the SOJOURN_OUTPUT_DIR environment variable
 * overrides both). */
int sj_experiment_write(sj_experiment* exp, const char* dir);

/* Serialized result document; owned by the handle, valid until the next
 * run/predict/free on it. */
const char* sj_experiment_result_json(sj_experiment* exp);

/* 1 if every acceptance gate of the last run passed, else 0. */
int sj_experiment_gates_passed(const sj_experiment* exp);

void sj_experiment_free(sj_experiment* exp);

/* Scalar helpers. */
int sj_chi2_tail(int k, double u, double* out);
int sj_noncentral_chi2_tail(int k, double lambda_sq, double u, double* out);

/* Chaos coefficient alpha_{2n_1,...,2n_k}(u); multi_index has k entries. */
int sj_alpha_coefficient(int k, const int* multi_index, double u, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SOJOURN_SOJOURN_H */
