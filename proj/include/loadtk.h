/* loadtk: balancing-area load analytics.
 *
 * Plain C interface over the toolkit. Every entry point returns a status
 * code; on failure loadtk_last_error() describes what went wrong for the
 * calling thread. Pointers returned through handles stay valid until the
 * matching close call.
 */
#ifndef LOADTK_H
#define LOADTK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef LOADTK_BUILD
#    define LOADTK_API __declspec(dllexport)
#  else
#    define LOADTK_API __declspec(dllimport)
#  endif
#else
#  define LOADTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Validation covers bad arguments, config or schema problems;
 * data covers unusable input values. */
enum {
    LOADTK_OK = 0,
    LOADTK_ERR_VALIDATION = 2,
    LOADTK_ERR_DATA = 3,
    LOADTK_ERR_INTERNAL = 4
};

LOADTK_API const char* loadtk_version(void);

/* Message for the most recent failure on this thread; empty string when the
 * last call succeeded. */
LOADTK_API const char* loadtk_last_error(void);

/* ---- batch runners (same behaviour as the CLI subcommands) ---- */

LOADTK_API int loadtk_run_fit(const char* config_path, const char* out_dir);
LOADTK_API int loadtk_run_report(const char* config_path, const char* out_dir);
LOADTK_API int loadtk_run_forecast_eval(const char* config_path, const char* out_dir);
LOADTK_API int loadtk_run_cps1(const char* config_path, const char* out_dir);
LOADTK_API int loadtk_run_synth(const char* config_path, const char* out_dir, uint64_t seed);

/* ---- scalar helpers ---- */

/* Wind chill in C; passes the temperature through outside the formula's
 * validity range (above 10 C or at 4.8 km/h and below). */
LOADTK_API int loadtk_wind_chill_c(double temp_c, double wind_kmh, double* out);

/* Heat index in C for relative humidity in percent. */
LOADTK_API int loadtk_heat_index_c(double temp_c, double rh_pct, double* out);

/* Reportable ACE in MW. bias_mw_per_tenth_hz must be negative. */
LOADTK_API int loadtk_race_mw(double ni_actual_mw, double ni_scheduled_mw, double freq_hz,
                              double freq_sched_hz, double bias_mw_per_tenth_hz, double* out);

/* Per-minute compliance product in Hz^2. */
LOADTK_API int loadtk_cf_minute_hz2(double ni_actual_mw, double ni_scheduled_mw, double freq_hz,
                                    double freq_sched_hz, double bias_mw_per_tenth_hz,
                                    double* out);

/* CPS1 score over n minutes of telemetry. freq_sched may be NULL (60 Hz).
 * Minutes with frequency outside [59, 61] Hz are skipped and counted in
 * *rejected. used/rejected may be NULL. */
LOADTK_API int loadtk_cps1(const double* ni_actual_mw, const double* ni_scheduled_mw,
                           const double* freq_hz, const double* freq_sched_hz, size_t n,
                           double bias_mw_per_tenth_hz, double epsilon1_hz, double* cps1_pct,
                           size_t* used, size_t* rejected);

/* Mean and population variance of (actual - estimated). */
LOADTK_API int loadtk_error_stats(const double* actual, const double* estimated, size_t n,
                                  double* mean_mw, double* variance_mw2);

/* Mean-shift gate between two windows of error statistics. significant is
 * set to 1 when |test_mean - ref_mean| exceeds k times the larger standard
 * error. diff_mw / scale_mw may be NULL. */
LOADTK_API int loadtk_anomaly_gate(double ref_mean_mw, double ref_variance_mw2, size_t ref_n,
                                   double test_mean_mw, double test_variance_mw2, size_t test_n,
                                   double k, double* diff_mw, double* scale_mw, int* significant);

/* MAE and MAPE of an estimate. mape_pct becomes NaN when every actual is
 * zero. */
LOADTK_API int loadtk_mae_mape(const double* actual, const double* estimated, size_t n,
                               double* mae_mw, double* mape_pct);

/* Pearson correlation with a two-sided p-value (t reference distribution,
 * n - 2 degrees of freedom). */
LOADTK_API int loadtk_pearson(const double* x, const double* y, size_t n, double* r,
                              double* p_value);

/* ---- dataset and model handles ---- */

typedef struct loadtk_dataset loadtk_dataset;
typedef struct loadtk_model loadtk_model;

/* Opens load + weather CSVs (holiday_csv may be NULL), validates them and
 * joins them on the hour grid. */
LOADTK_API int loadtk_dataset_open(const char* load_csv, const char* weather_csv,
                                   const char* holiday_csv, loadtk_dataset** out);
LOADTK_API void loadtk_dataset_close(loadtk_dataset* ds);

/* Joined-range facts. Any output pointer may be NULL. Hours count from
 * 1970-01-01T00:00 on the civil hour grid. */
LOADTK_API int loadtk_dataset_info(const loadtk_dataset* ds, int64_t* first_hour,
                                   int64_t* end_hour, uint64_t* joined_rows,
                                   uint64_t* dropped_hours);

/* Fits one model on [from_date, to_date), dates as YYYY-MM-DD.
 * lambda_policy: "auto", "exact" or "fixed:<value>". */
LOADTK_API int loadtk_fit(const loadtk_dataset* ds, const char* from_date, const char* to_date,
                          const char* lambda_policy, loadtk_model** out);
LOADTK_API void loadtk_model_close(loadtk_model* m);

LOADTK_API int loadtk_model_save_json(const loadtk_model* m, const char* path);
LOADTK_API int loadtk_model_open_json(const char* path, loadtk_model** out);

/* Hours in [from_date, to_date); convenience for sizing estimate buffers. */
LOADTK_API int loadtk_hours_between(const char* from_date, const char* to_date, int64_t* hours);

/* Counterfactual estimate for every hour of [from_date, to_date). out must
 * hold loadtk_hours_between() entries; hours without usable weather are
 * written as NaN. */
LOADTK_API int loadtk_estimate(const loadtk_dataset* ds, const loadtk_model* m,
                               const char* from_date, const char* to_date, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LOADTK_H */
