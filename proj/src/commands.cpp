#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "cps.hpp"
#include "csv_io.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "json.hpp"
#include "metrics.hpp"
#include "run_config.hpp"
#include "series.hpp"
#include "synth.hpp"
#include "version.hpp"

namespace loadtk {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path p(out_dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw DataError("cannot create output directory " + out_dir + ": " + ec.message());
    return p;
}

std::vector<std::string> stamp_comments(const RunConfig& cfg) {
    return {std::string("loadtk ") + kToolkitVersion, "config " + cfg.config_hash_hex()};
}

ojson stamped_json(const RunConfig& cfg) {
    ojson j;
    j["toolkit_version"] = kToolkitVersion;
    j["config_hash"] = cfg.config_hash_hex();
    return j;
}

ojson window_json(const DateWindow& w) {
    return {{"from", format_date(w.from)}, {"to", format_date(w.to)}};
}

Dataset load_dataset(const RunConfig& cfg) {
    return load_dataset_files(cfg.require_path(cfg.load_csv, "data.load_csv"),
                              cfg.require_path(cfg.weather_csv, "data.weather_csv"),
                              cfg.holiday_csv);
}

ojson five_number_json(const FiveNumber& f) {
    return {{"n", f.n},   {"min", f.min}, {"q1", f.q1},
            {"median", f.median}, {"q3", f.q3},  {"max", f.max}};
}

void write_json_file(const fs::path& path, const ojson& j) {
    write_text_file(path.string(), j.dump(2) + "\n");
}

}  // namespace

Dataset load_dataset_files(const std::string& load_csv, const std::string& weather_csv,
                           const std::optional<std::string>& holiday_csv) {
    Dataset ds;
    auto samples = read_load_csv(load_csv);
    if (samples.empty()) throw DataError("load file has no rows");
    SeriesBuild build = series_from_samples(samples);
    ds.load = std::move(build.series);
    ds.duplicate_hours = build.duplicate_hours;

    ds.weather = read_weather_csv(weather_csv);
    if (ds.weather.empty()) throw DataError("weather file has no rows");
    auto issues = validate_weather(ds.weather);
    if (!issues.empty()) {
        std::string msg = "weather data is inconsistent: " + issues.front();
        if (issues.size() > 1)
            msg += " (and " + std::to_string(issues.size() - 1) + " more)";
        throw DataError(msg);
    }

    if (holiday_csv) ds.calendar.set_holidays(read_holiday_csv(*holiday_csv));
    ds.calendar.validate();

    ds.joined = align(ds.load, ds.weather);
    return ds;
}

void cmd_fit(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    const DateWindow& win = cfg.require_window(cfg.fit_window, "fit.window");
    fs::path out = prepare_out_dir(out_dir);

    Dataset ds = load_dataset(cfg);
    JoinedTable slice;
    slice.overlap_start = win.from_hour();
    slice.overlap_end = win.to_hour();
    for (const auto& r : ds.joined.rows)
        if (r.hour >= win.from_hour() && r.hour < win.to_hour()) slice.rows.push_back(r);
    if (slice.rows.empty()) throw DataError("no usable hours inside fit.window");

    Model model = fit_model(build_matrix(slice, ds.calendar), cfg.solver);

    ojson body = ojson::parse(model.to_json());
    ojson j = stamped_json(cfg);
    for (auto& [k, v] : body.items()) j[k] = v;
    write_json_file(out / "model.json", j);
}

void cmd_report(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    const DateWindow& win = cfg.require_window(cfg.report_window, "report.window");
    fs::path out = prepare_out_dir(out_dir);

    Dataset ds = load_dataset(cfg);
    RollingEstimate roll = rolling_estimate(ds.joined, ds.calendar, win.from_hour(),
                                            win.to_hour(), cfg.schedule, cfg.solver);

    // hourly pairs inside the window where both sides exist
    std::vector<std::pair<Timestamp, std::pair<double, double>>> pairs;
    for (const auto& r : ds.joined.rows) {
        if (r.hour < win.from_hour() || r.hour >= win.to_hour()) continue;
        double est = roll.estimate.at_hour(r.hour);
        if (HourlySeries::is_missing(est)) continue;
        pairs.push_back({Timestamp::from_hour_index(r.hour), {r.load_mw, est}});
    }
    if (pairs.empty()) throw DataError("no estimable hours inside report.window");

    {
        std::string text;
        for (const auto& c : stamp_comments(cfg)) text += "# " + c + "\n";
        text += "timestamp,actual_mw,estimated_mw,error_mw\n";
        for (const auto& [ts, ae] : pairs)
            text += format_hour(ts) + "," + format_double(ae.first) + "," +
                    format_double(ae.second) + "," + format_double(ae.first - ae.second) + "\n";
        write_text_file((out / "estimates.csv").string(), text);
    }

    HourlySeries actual_slice = ds.load.slice(win.from_hour(), win.to_hour());
    std::vector<DailyAggregate> days =
        daily_aggregates(actual_slice, roll.estimate, ds.weather);
    std::vector<DailyEvi> devi = daily_evi(days);
    std::vector<MonthlyEvi> mevi = monthly_evi(days);
    std::vector<AccumulatedPoint> accum = accumulated_difference_gwh(days);

    {
        std::string text;
        for (const auto& c : stamp_comments(cfg)) text += "# " + c + "\n";
        text += "date,actual_mwh,estimated_mwh,evi_pct,accumulated_gwh\n";
        for (std::size_t i = 0; i < days.size(); ++i)
            text += format_date(days[i].date) + "," + format_double(days[i].energy_actual_mwh) +
                    "," + format_double(days[i].energy_estimated_mwh) + "," +
                    format_double(devi[i].evi) + "," + format_double(accum[i].accumulated_gwh) +
                    "\n";
        write_text_file((out / "daily.csv").string(), text);
    }

    ojson j = stamped_json(cfg);
    j["window"] = window_json(win);
    j["hours"] = {{"evaluated", pairs.size()},
                  {"dropped_in_join", ds.joined.dropped_hours},
                  {"duplicate_load_hours", ds.duplicate_hours},
                  {"trend_extrapolated", roll.trend_extrapolated_hours}};

    j["models"] = ojson::array();
    for (const auto& im : roll.models) {
        ojson m;
        m["valid_from"] = format_hour(Timestamp::from_hour_index(im.valid_start_hour));
        m["valid_to"] = format_hour(Timestamp::from_hour_index(im.valid_end_hour));
        m["train_start"] = format_hour(Timestamp::from_hour_index(im.model.train_start_hour));
        m["train_end"] = format_hour(Timestamp::from_hour_index(im.model.train_end_hour));
        m["train_rows"] = im.model.train_rows;
        m["lambda"] = im.model.lambda;
        m["residual_mean_mw"] = im.model.residual_mean_mw;
        j["models"].push_back(std::move(m));
    }

    // labeled scenario stats and the mean-shift gates
    std::map<std::string, ErrorStats> stats_by_label;
    j["scenarios"] = ojson(ojson::value_t::object);
    for (const auto& [label, sw] : cfg.scenarios) {
        std::vector<double> a, e;
        for (const auto& [ts, ae] : pairs) {
            std::int64_t h = ts.hour_index();
            if (h >= sw.from_hour() && h < sw.to_hour()) {
                a.push_back(ae.first);
                e.push_back(ae.second);
            }
        }
        if (a.empty())
            throw DataError("scenario '" + label + "' has no estimated hours");
        ErrorStats st = error_stats(a, e);
        stats_by_label[label] = st;
        ojson s;
        s["window"] = window_json(sw);
        s["hours"] = st.n;
        s["mean_error_mw"] = st.mean_mw;
        s["error_variance_mw2"] = st.variance_mw2;
        j["scenarios"][label] = std::move(s);
    }

    j["gates"] = ojson::array();
    if (cfg.gate_reference) {
        const ErrorStats& ref = stats_by_label.at(*cfg.gate_reference);
        for (const auto& [label, _] : cfg.scenarios) {
            if (label == *cfg.gate_reference) continue;
            GateDecision g = anomaly_gate(ref, stats_by_label.at(label), cfg.gate_k);
            ojson gj;
            gj["reference"] = *cfg.gate_reference;
            gj["test"] = label;
            gj["diff_mw"] = g.diff_mw;
            gj["scale_mw"] = g.scale_mw;
            gj["k"] = g.k;
            gj["significant"] = g.significant;
            j["gates"].push_back(std::move(gj));
        }
    }

    j["monthly_evi"] = ojson::array();
    for (const auto& m : mevi)
        j["monthly_evi"].push_back({{"year", m.year},
                                    {"month", m.month},
                                    {"days", m.days},
                                    {"actual_mwh", m.actual_mwh},
                                    {"estimated_mwh", m.estimated_mwh},
                                    {"evi_pct", m.evi}});
    j["accumulated_gwh_final"] = accum.empty() ? 0.0 : accum.back().accumulated_gwh;

    // hour-to-hour changes, actual vs estimated, on shared hour pairs
    std::vector<double> ramp_a, ramp_e;
    for (std::int64_t h = win.from_hour(); h + 1 < win.to_hour(); ++h) {
        double a0 = actual_slice.at_hour(h), a1 = actual_slice.at_hour(h + 1);
        double e0 = roll.estimate.at_hour(h), e1 = roll.estimate.at_hour(h + 1);
        if (HourlySeries::is_missing(a0) || HourlySeries::is_missing(a1) ||
            HourlySeries::is_missing(e0) || HourlySeries::is_missing(e1))
            continue;
        ramp_a.push_back(a1 - a0);
        ramp_e.push_back(e1 - e0);
    }
    ojson ramps;
    if (!ramp_a.empty()) {
        ramps["actual"] = five_number_json(five_number(ramp_a));
        ramps["estimated"] = five_number_json(five_number(ramp_e));
        try {
            Correlation c = pearson(ramp_a, ramp_e);
            ramps["correlation"] = {{"n", c.n}, {"r", c.r}, {"p_value", c.p_value}};
        } catch (const DataError&) {
            ramps["correlation"] = nullptr;
        }
    }
    j["ramps"] = std::move(ramps);

    ojson daily_corr = nullptr;
    if (days.size() >= 3) {
        std::vector<double> da, de;
        for (const auto& d : days) {
            da.push_back(d.energy_actual_mwh);
            de.push_back(d.energy_estimated_mwh);
        }
        try {
            Correlation c = pearson(da, de);
            daily_corr = {{"n", c.n}, {"r", c.r}, {"p_value", c.p_value}};
        } catch (const DataError&) {
        }
    }
    j["daily_energy_correlation"] = std::move(daily_corr);

    write_json_file(out / "report.json", j);
}

void cmd_forecast_eval(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    fs::path out = prepare_out_dir(out_dir);

    auto load_rows = read_load_csv(cfg.require_path(cfg.load_csv, "data.load_csv"));
    auto forecast_rows =
        read_forecast_csv(cfg.require_path(cfg.forecast_csv, "data.forecast_csv"));

    auto to_map = [](const std::vector<std::pair<Timestamp, double>>& rows, const char* what) {
        std::map<std::int64_t, double> m;
        for (const auto& [ts, v] : rows)
            if (!m.emplace(ts.hour_index(), v).second)
                throw DataError(std::string(what) + " repeats timestamp " + format_hour(ts));
        return m;
    };
    std::map<std::int64_t, double> actual = to_map(load_rows, "load file");
    std::map<std::int64_t, double> forecast = to_map(forecast_rows, "forecast file");
    std::map<std::int64_t, double> baseline;
    if (cfg.baseline_forecast_csv)
        baseline = to_map(read_forecast_csv(*cfg.baseline_forecast_csv), "baseline forecast file");

    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    if (cfg.forecast_window) {
        lo = cfg.forecast_window->from_hour();
        hi = cfg.forecast_window->to_hour();
    }

    struct Bucket {
        std::vector<double> a, f, b;
    };
    std::map<std::pair<int, int>, Bucket> by_month;
    Bucket total;
    for (const auto& [h, a] : actual) {
        if (h < lo || h >= hi) continue;
        auto fit = forecast.find(h);
        if (fit == forecast.end()) continue;
        double bval = 0;
        if (cfg.baseline_forecast_csv) {
            auto bit = baseline.find(h);
            if (bit == baseline.end()) continue;  // fair comparison needs all three
            bval = bit->second;
        }
        Timestamp ts = Timestamp::from_hour_index(h);
        Bucket& bk = by_month[{ts.year, ts.month}];
        bk.a.push_back(a);
        bk.f.push_back(fit->second);
        total.a.push_back(a);
        total.f.push_back(fit->second);
        if (cfg.baseline_forecast_csv) {
            bk.b.push_back(bval);
            total.b.push_back(bval);
        }
    }
    if (total.a.empty())
        throw DataError("no hours where the load and forecast files overlap");

    auto bucket_json = [&](int year, int month, const Bucket& bk) {
        ojson m;
        if (year > 0) {
            m["year"] = year;
            m["month"] = month;
        }
        m["hours"] = bk.a.size();
        MaeMape score = mae_mape(bk.a, bk.f);
        m["mae_mw"] = score.mae_mw;
        m["mape_pct"] = score.mape_pct ? ojson(*score.mape_pct) : ojson(nullptr);
        if (cfg.baseline_forecast_csv) {
            MaeMape base = mae_mape(bk.a, bk.b);
            m["baseline_mae_mw"] = base.mae_mw;
            m["baseline_mape_pct"] = base.mape_pct ? ojson(*base.mape_pct) : ojson(nullptr);
            m["mae_change_pct"] = relative_change_pct(base.mae_mw, score.mae_mw);
            if (base.mape_pct && score.mape_pct)
                m["mape_change_pct"] = relative_change_pct(*base.mape_pct, *score.mape_pct);
            else
                m["mape_change_pct"] = nullptr;
        }
        return m;
    };

    ojson j = stamped_json(cfg);
    if (cfg.forecast_window) j["window"] = window_json(*cfg.forecast_window);
    j["months"] = ojson::array();
    for (const auto& [ym, bk] : by_month) j["months"].push_back(bucket_json(ym.first, ym.second, bk));
    j["overall"] = bucket_json(0, 0, total);
    write_json_file(out / "forecast_eval.json", j);
}

void cmd_cps1(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    cfg.ba.validate();
    fs::path out = prepare_out_dir(out_dir);

    auto rows = read_telemetry_csv(cfg.require_path(cfg.telemetry_csv, "data.telemetry_csv"));
    if (rows.empty()) throw DataError("telemetry file has no rows");
    std::vector<MinuteSample> minutes = minute_average(rows);
    Cps1Result res = cps1(minutes, cfg.ba);

    ojson j = stamped_json(cfg);
    j["raw_rows"] = rows.size();
    j["minutes_used"] = res.minutes_used;
    j["minutes_rejected"] = res.minutes_rejected;
    j["mean_cf_hz2"] = res.mean_cf_hz2;
    j["compliance_factor"] = res.compliance_factor;
    j["cps1_pct"] = res.cps1_pct;
    if (cfg.cps1_baseline_pct) {
        j["baseline_pct"] = *cfg.cps1_baseline_pct;
        j["drop_pct"] = cps1_drop_pct(*cfg.cps1_baseline_pct, res.cps1_pct);
    }
    write_json_file(out / "cps1.json", j);
}

void cmd_synth(const std::string& config_path, const std::string& out_dir, std::uint64_t seed) {
    RunConfig cfg = RunConfig::parse_file(config_path);
    fs::path out = prepare_out_dir(out_dir);

    std::vector<std::string> comments = stamp_comments(cfg);
    comments.push_back("seed " + std::to_string(seed));

    if (cfg.synth_kind == "telemetry") {
        if (!cfg.telemetry_start)
            throw ValidationError("config is missing synth.telemetry.start");
        TelemetryScenario sc;
        sc.start = *cfg.telemetry_start;
        sc.minutes = cfg.telemetry_minutes;
        sc.seed = seed;
        sc.freq_sigma_hz = cfg.telemetry_freq_sigma_hz;
        sc.race_noise_mw = cfg.telemetry_race_noise_mw;
        sc.race_freq_gain = cfg.telemetry_race_freq_gain;
        sc.insane_every = cfg.telemetry_insane_every;
        sc.ba = cfg.ba;
        TelemetryData data = generate_telemetry(sc);
        write_telemetry_csv((out / "telemetry.csv").string(), data.minutes, comments);

        ojson j = stamped_json(cfg);
        j["kind"] = "telemetry";
        j["seed"] = seed;
        j["start"] = format_hour(sc.start);
        j["minutes"] = sc.minutes;
        j["minutes_used"] = data.truth.minutes_used;
        j["minutes_rejected"] = data.truth.minutes_rejected;
        j["mean_cf_hz2"] = data.truth.mean_cf_hz2;
        j["cps1_pct"] = data.truth.cps1_pct;
        write_json_file(out / "truth.json", j);
        return;
    }

    LoadScenario sc;
    const DateWindow& win = cfg.require_window(cfg.synth_window, "synth.window");
    sc.start = win.from;
    sc.end = win.to;
    sc.seed = seed;
    sc.noise_sigma_mw = cfg.synth_noise_sigma_mw;
    sc.model = cfg.synth_model == "flat_month" ? planted_flat_month() : planted_seasonal();
    sc.model.level_mw = cfg.synth_level_mw;
    if (cfg.synth_suppress_window) {
        Suppression sup;
        sup.start = cfg.synth_suppress_window->from;
        sup.end = cfg.synth_suppress_window->to;
        sup.fraction = cfg.synth_suppress_fraction;
        sc.suppression = sup;
    }
    SynthData data = generate_load(sc);
    write_load_csv((out / "load.csv").string(), data.load, comments);
    write_weather_csv((out / "weather.csv").string(), data.weather, comments);
    write_holiday_csv((out / "holidays.csv").string(), data.calendar.holidays, comments);

    ojson j = stamped_json(cfg);
    j["kind"] = "load";
    j["seed"] = seed;
    j["window"] = window_json(win);
    j["model"] = cfg.synth_model;
    j["level_mw"] = cfg.synth_level_mw;
    j["noise_sigma_mw"] = cfg.synth_noise_sigma_mw;
    if (sc.suppression) {
        j["suppression"] = {{"from", format_date(sc.suppression->start)},
                            {"to", format_date(sc.suppression->end)},
                            {"fraction", sc.suppression->fraction},
                            {"suppressed_hours", data.truth.suppressed_hours},
                            {"suppressed_energy_mwh", data.truth.suppressed_energy_mwh}};
    } else {
        j["suppression"] = nullptr;
    }
    write_json_file(out / "truth.json", j);
}

}  // namespace loadtk
