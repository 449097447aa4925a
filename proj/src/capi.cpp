#include "loadtk.h"

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "cps.hpp"
#include "csv_io.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "metrics.hpp"
#include "run_config.hpp"
#include "version.hpp"
#include "weather.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename F>
int guarded(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return LOADTK_OK;
    } catch (const loadtk::ValidationError& e) {
        set_error(e.what());
        return LOADTK_ERR_VALIDATION;
    } catch (const loadtk::DataError& e) {
        set_error(e.what());
        return LOADTK_ERR_DATA;
    } catch (const std::exception& e) {
        set_error(e.what());
        return LOADTK_ERR_INTERNAL;
    } catch (...) {
        set_error(nullptr);
        return LOADTK_ERR_INTERNAL;
    }
}

void require(const void* p, const char* name) {
    if (!p) throw loadtk::ValidationError(std::string(name) + " must not be null");
}

loadtk::CivilDate require_date(const char* text, const char* name) {
    require(text, name);
    auto d = loadtk::parse_date(text);
    if (!d) throw loadtk::ValidationError(std::string(name) + " must be YYYY-MM-DD");
    return *d;
}

}  // namespace

struct loadtk_dataset {
    loadtk::Dataset ds;
};

struct loadtk_model {
    loadtk::Model model;
};

extern "C" {

const char* loadtk_version(void) { return loadtk::kToolkitVersion; }

const char* loadtk_last_error(void) { return g_last_error.c_str(); }

int loadtk_run_fit(const char* config_path, const char* out_dir) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out_dir, "out_dir");
        loadtk::cmd_fit(config_path, out_dir);
    });
}

int loadtk_run_report(const char* config_path, const char* out_dir) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out_dir, "out_dir");
        loadtk::cmd_report(config_path, out_dir);
    });
}

int loadtk_run_forecast_eval(const char* config_path, const char* out_dir) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out_dir, "out_dir");
        loadtk::cmd_forecast_eval(config_path, out_dir);
    });
}

int loadtk_run_cps1(const char* config_path, const char* out_dir) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out_dir, "out_dir");
        loadtk::cmd_cps1(config_path, out_dir);
    });
}

int loadtk_run_synth(const char* config_path, const char* out_dir, uint64_t seed) {
    return guarded([&] {
        require(config_path, "config_path");
        require(out_dir, "out_dir");
        loadtk::cmd_synth(config_path, out_dir, seed);
    });
}

int loadtk_wind_chill_c(double temp_c, double wind_kmh, double* out) {
    return guarded([&] {
        require(out, "out");
        if (wind_kmh < 0) throw loadtk::ValidationError("wind speed must be non-negative");
        *out = loadtk::wind_chill_c(temp_c, wind_kmh);
    });
}

int loadtk_heat_index_c(double temp_c, double rh_pct, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = loadtk::heat_index_c(temp_c, rh_pct);
    });
}

int loadtk_race_mw(double ni_actual_mw, double ni_scheduled_mw, double freq_hz,
                   double freq_sched_hz, double bias_mw_per_tenth_hz, double* out) {
    return guarded([&] {
        require(out, "out");
        loadtk::BaSettings ba;
        ba.bias_mw_per_tenth_hz = bias_mw_per_tenth_hz;
        ba.validate();
        loadtk::MinuteSample s{0, ni_actual_mw, ni_scheduled_mw, freq_hz, freq_sched_hz};
        *out = loadtk::race_mw(s, ba);
    });
}

int loadtk_cf_minute_hz2(double ni_actual_mw, double ni_scheduled_mw, double freq_hz,
                         double freq_sched_hz, double bias_mw_per_tenth_hz, double* out) {
    return guarded([&] {
        require(out, "out");
        loadtk::BaSettings ba;
        ba.bias_mw_per_tenth_hz = bias_mw_per_tenth_hz;
        ba.validate();
        loadtk::MinuteSample s{0, ni_actual_mw, ni_scheduled_mw, freq_hz, freq_sched_hz};
        *out = loadtk::compliance_factor_minute(s, ba);
    });
}

int loadtk_cps1(const double* ni_actual_mw, const double* ni_scheduled_mw, const double* freq_hz,
                const double* freq_sched_hz, size_t n, double bias_mw_per_tenth_hz,
                double epsilon1_hz, double* cps1_pct, size_t* used, size_t* rejected) {
    return guarded([&] {
        require(ni_actual_mw, "ni_actual_mw");
        require(ni_scheduled_mw, "ni_scheduled_mw");
        require(freq_hz, "freq_hz");
        require(cps1_pct, "cps1_pct");
        loadtk::BaSettings ba;
        ba.bias_mw_per_tenth_hz = bias_mw_per_tenth_hz;
        ba.epsilon1_hz = epsilon1_hz;
        std::vector<loadtk::MinuteSample> minutes(n);
        for (size_t i = 0; i < n; ++i) {
            minutes[i].minute = static_cast<int64_t>(i);
            minutes[i].ni_actual_mw = ni_actual_mw[i];
            minutes[i].ni_scheduled_mw = ni_scheduled_mw[i];
            minutes[i].freq_hz = freq_hz[i];
            minutes[i].freq_sched_hz = freq_sched_hz ? freq_sched_hz[i] : 60.0;
        }
        loadtk::Cps1Result res = loadtk::cps1(minutes, ba);
        *cps1_pct = res.cps1_pct;
        if (used) *used = res.minutes_used;
        if (rejected) *rejected = res.minutes_rejected;
    });
}

int loadtk_error_stats(const double* actual, const double* estimated, size_t n, double* mean_mw,
                       double* variance_mw2) {
    return guarded([&] {
        require(actual, "actual");
        require(estimated, "estimated");
        require(mean_mw, "mean_mw");
        require(variance_mw2, "variance_mw2");
        loadtk::ErrorStats st =
            loadtk::error_stats({actual, n}, {estimated, n});
        *mean_mw = st.mean_mw;
        *variance_mw2 = st.variance_mw2;
    });
}

int loadtk_anomaly_gate(double ref_mean_mw, double ref_variance_mw2, size_t ref_n,
                        double test_mean_mw, double test_variance_mw2, size_t test_n, double k,
                        double* diff_mw, double* scale_mw, int* significant) {
    return guarded([&] {
        require(significant, "significant");
        loadtk::ErrorStats ref{ref_n, ref_mean_mw, ref_variance_mw2};
        loadtk::ErrorStats test{test_n, test_mean_mw, test_variance_mw2};
        loadtk::GateDecision g = loadtk::anomaly_gate(ref, test, k);
        if (diff_mw) *diff_mw = g.diff_mw;
        if (scale_mw) *scale_mw = g.scale_mw;
        *significant = g.significant ? 1 : 0;
    });
}

int loadtk_mae_mape(const double* actual, const double* estimated, size_t n, double* mae_mw,
                    double* mape_pct) {
    return guarded([&] {
        require(actual, "actual");
        require(estimated, "estimated");
        require(mae_mw, "mae_mw");
        loadtk::MaeMape score = loadtk::mae_mape({actual, n}, {estimated, n});
        *mae_mw = score.mae_mw;
        if (mape_pct)
            *mape_pct = score.mape_pct ? *score.mape_pct : std::nan("");
    });
}

int loadtk_pearson(const double* x, const double* y, size_t n, double* r, double* p_value) {
    return guarded([&] {
        require(x, "x");
        require(y, "y");
        require(r, "r");
        loadtk::Correlation c = loadtk::pearson({x, n}, {y, n});
        *r = c.r;
        if (p_value) *p_value = c.p_value;
    });
}

int loadtk_dataset_open(const char* load_csv, const char* weather_csv, const char* holiday_csv,
                        loadtk_dataset** out) {
    return guarded([&] {
        require(load_csv, "load_csv");
        require(weather_csv, "weather_csv");
        require(out, "out");
        std::optional<std::string> holidays;
        if (holiday_csv) holidays = holiday_csv;
        auto handle = std::make_unique<loadtk_dataset>();
        handle->ds = loadtk::load_dataset_files(load_csv, weather_csv, holidays);
        *out = handle.release();
    });
}

void loadtk_dataset_close(loadtk_dataset* ds) { delete ds; }

int loadtk_dataset_info(const loadtk_dataset* ds, int64_t* first_hour, int64_t* end_hour,
                        uint64_t* joined_rows, uint64_t* dropped_hours) {
    return guarded([&] {
        require(ds, "ds");
        if (first_hour) *first_hour = ds->ds.joined.rows.front().hour;
        if (end_hour) *end_hour = ds->ds.joined.rows.back().hour + 1;
        if (joined_rows) *joined_rows = ds->ds.joined.rows.size();
        if (dropped_hours) *dropped_hours = ds->ds.joined.dropped_hours;
    });
}

int loadtk_fit(const loadtk_dataset* ds, const char* from_date, const char* to_date,
               const char* lambda_policy, loadtk_model** out) {
    return guarded([&] {
        require(ds, "ds");
        require(out, "out");
        loadtk::CivilDate from = require_date(from_date, "from_date");
        loadtk::CivilDate to = require_date(to_date, "to_date");
        if (!(from < to))
            throw loadtk::ValidationError("to_date must fall after from_date");
        loadtk::SolverOptions opt;
        if (lambda_policy) opt = loadtk::parse_lambda_policy(lambda_policy);

        int64_t from_h = loadtk::days_from_civil(from) * 24;
        int64_t to_h = loadtk::days_from_civil(to) * 24;
        loadtk::JoinedTable slice;
        slice.overlap_start = from_h;
        slice.overlap_end = to_h;
        for (const auto& r : ds->ds.joined.rows)
            if (r.hour >= from_h && r.hour < to_h) slice.rows.push_back(r);
        if (slice.rows.empty())
            throw loadtk::DataError("no usable hours inside the fit window");

        auto handle = std::make_unique<loadtk_model>();
        handle->model =
            loadtk::fit_model(loadtk::build_matrix(slice, ds->ds.calendar), opt);
        *out = handle.release();
    });
}

void loadtk_model_close(loadtk_model* m) { delete m; }

int loadtk_model_save_json(const loadtk_model* m, const char* path) {
    return guarded([&] {
        require(m, "m");
        require(path, "path");
        loadtk::write_text_file(path, m->model.to_json() + "\n");
    });
}

int loadtk_model_open_json(const char* path, loadtk_model** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        auto handle = std::make_unique<loadtk_model>();
        handle->model = loadtk::Model::from_json(loadtk::read_text_file(path));
        *out = handle.release();
    });
}

int loadtk_hours_between(const char* from_date, const char* to_date, int64_t* hours) {
    return guarded([&] {
        require(hours, "hours");
        loadtk::CivilDate from = require_date(from_date, "from_date");
        loadtk::CivilDate to = require_date(to_date, "to_date");
        if (!(from < to))
            throw loadtk::ValidationError("to_date must fall after from_date");
        *hours = (loadtk::days_from_civil(to) - loadtk::days_from_civil(from)) * 24;
    });
}

int loadtk_estimate(const loadtk_dataset* ds, const loadtk_model* m, const char* from_date,
                    const char* to_date, double* out) {
    return guarded([&] {
        require(ds, "ds");
        require(m, "m");
        require(out, "out");
        loadtk::CivilDate from = require_date(from_date, "from_date");
        loadtk::CivilDate to = require_date(to_date, "to_date");
        if (!(from < to))
            throw loadtk::ValidationError("to_date must fall after from_date");
        int64_t from_h = loadtk::days_from_civil(from) * 24;
        int64_t to_h = loadtk::days_from_civil(to) * 24;

        loadtk::JoinedTable slice;
        slice.overlap_start = from_h;
        slice.overlap_end = to_h;
        for (const auto& r : ds->ds.joined.rows)
            if (r.hour >= from_h && r.hour < to_h) slice.rows.push_back(r);

        auto n = static_cast<size_t>(to_h - from_h);
        for (size_t i = 0; i < n; ++i) out[i] = std::nan("");
        std::vector<double> pred = loadtk::predict(m->model, slice, ds->ds.calendar);
        for (size_t i = 0; i < slice.rows.size(); ++i)
            out[static_cast<size_t>(slice.rows[i].hour - from_h)] = pred[i];
    });
}

}  // extern "C"
