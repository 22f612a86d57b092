/* C interface to the fuzzident library: rule-based fuzzy models with smooth
 * compositions, gradient identification, online self-learning and the two
 * reference plants. All heavy objects are opaque handles; every fallible
 * call returns a status code and leaves a message in fzi_last_error(). */
#ifndef FUZZIDENT_H
#define FUZZIDENT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FZI_OK = 0,
  FZI_ERR_INVALID_ARGUMENT = 1,
  FZI_ERR_IO = 2,
  FZI_ERR_PARSE = 3,
  FZI_ERR_NUMERIC = 4,
  FZI_ERR_INTERNAL = 5
} fzi_status;

const char* fzi_version(void);

/* Message for the most recent failing call on this thread. */
const char* fzi_last_error(void);

/* ---- norm evaluation -------------------------------------------------- */
/* composition: minmax, prodsum, smooth1, atan, acos, smooth4.
 * beta is the smooth1 shape parameter (> 1), ignored by the others.
 * Any of value / d_da / d_db may be NULL. */
fzi_status fzi_t_norm(const char* composition, double beta, double a, double b,
                      double* value, double* d_da, double* d_db);
fzi_status fzi_s_norm(const char* composition, double beta, double a, double b,
                      double* value, double* d_da, double* d_db);

/* ---- models ----------------------------------------------------------- */
typedef struct fzi_model fzi_model;

fzi_status fzi_model_load(const char* path, fzi_model** out);
fzi_status fzi_model_save(const fzi_model* model, const char* path);
void fzi_model_free(fzi_model* model);
int fzi_model_input_arity(const fzi_model* model);
int fzi_model_rule_count(const fzi_model* model);
fzi_status fzi_model_predict(const fzi_model* model, const double* x, int n,
                             double* y_out);

/* ---- batch identification --------------------------------------------- */
typedef struct {
  double alpha_c;
  double alpha_delta;
  double alpha_d;
  double epsilon;
  int max_epochs;
  int restarts;
  int mfs_per_input;
  unsigned long long seed;
} fzi_train_options;

void fzi_train_options_init(fzi_train_options* opts);

/* Trains on a dataset CSV (input columns then a final "target" column).
 * Writes the model file and, when convergence_csv is non-NULL, the
 * per-epoch (restart, epoch, E) history. training_rms may be NULL. */
fzi_status fzi_train_csv(const char* dataset_csv, const char* composition,
                         double beta, const fzi_train_options* opts,
                         const char* model_out, const char* convergence_csv,
                         double* training_rms);

/* ---- online self-learning --------------------------------------------- */
typedef struct {
  double epsilon;
  double alpha_c;
  double alpha_delta;
  double alpha_d;
  long horizon;    /* max stream samples to process, -1 for all */
  int rms_window;  /* trailing RMS window for the trace */
} fzi_adapt_options;

void fzi_adapt_options_init(fzi_adapt_options* opts);

fzi_status fzi_adapt_csv(const char* model_in, const char* stream_csv,
                         const fzi_adapt_options* opts, const char* model_out,
                         const char* trace_csv, long* update_count);

/* Frozen-model evaluation over a dataset CSV; predictions_csv and rms_out
 * may be NULL. */
fzi_status fzi_predict_csv(const char* model_path, const char* dataset_csv,
                           const char* predictions_csv, double* rms_out);

/* ---- reference plants -------------------------------------------------- */
typedef enum {
  FZI_MG_NOMINAL = 0,
  FZI_MG_PARAM_CHANGE = 1,
  FZI_MG_NOISE = 2
} fzi_mg_scenario;

typedef struct {
  double a, b, C, tau, x0, dt, duration;
  fzi_mg_scenario scenario;
  double new_b;           /* param-change value of b */
  double switch_time;
  double noise_amplitude; /* noise: b = b + amplitude * U(0,1) per step */
  unsigned long long seed;
} fzi_mg_options;

void fzi_mg_options_init(fzi_mg_options* opts);

/* Writes the series CSV plus a ".meta" sidecar with parameters and seed.
 * When dataset_csv is non-NULL, also writes the standard lag-embedded
 * regression dataset x(t), x(t-6), x(t-12), x(t-18) -> x(t+6). */
fzi_status fzi_generate_mackey_glass(const fzi_mg_options* opts,
                                     const char* series_csv,
                                     const char* dataset_csv);

typedef struct {
  double q, V, k0, E_over_R, T0, Tc0, dH, Cp, Cpc, rho, rho_c, ha, Ca0;
  double dt, duration;
  double qc_constant;      /* used when paper_qc_steps == 0 */
  int paper_qc_steps;      /* cycle 103,105,110,100,99,110 l/min */
  int tc0_sinusoid;        /* Tc0 + amplitude * sin(sample index) */
  double tc0_amplitude;
  double initial_Ca, initial_T;
} fzi_cstr_options;

void fzi_cstr_options_init(fzi_cstr_options* opts);

/* Series columns: Ca, T, qc, Tc0. The optional dataset follows the
 * one-step-ahead structure Ca(k), Ca(k-1), Ca(k-2), qc(k-1) -> Ca(k+1). */
fzi_status fzi_generate_cstr(const fzi_cstr_options* opts,
                             const char* series_csv, const char* dataset_csv);

/* ---- canned studies ---------------------------------------------------- */
/* example: "mackey-glass" or "cstr". Writes results.csv, convergence and
 * trace CSVs, SVG charts and a manifest into out_dir (which must exist).
 * Fails only when every composition fails. */
fzi_status fzi_reproduce(const char* example, unsigned long long seed,
                         const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* FUZZIDENT_H */
