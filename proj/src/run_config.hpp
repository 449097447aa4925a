#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calendar.hpp"
#include "cps.hpp"
#include "estimator.hpp"

namespace loadtk {

// Half-open civil-date window [from, to).
struct DateWindow {
    CivilDate from;
    CivilDate to;

    std::int64_t from_hour() const { return days_from_civil(from) * 24; }
    std::int64_t to_hour() const { return days_from_civil(to) * 24; }
};

// Flat key = value run configuration. '#' starts a comment, keys are
// dot-scoped, unknown or repeated keys are rejected. Windows are written
// YYYY-MM-DD..YYYY-MM-DD and are half-open.
struct RunConfig {
    std::optional<std::string> load_csv;
    std::optional<std::string> weather_csv;
    std::optional<std::string> holiday_csv;
    std::optional<std::string> forecast_csv;
    std::optional<std::string> baseline_forecast_csv;
    std::optional<std::string> telemetry_csv;

    SolverOptions solver;
    RetrainSchedule schedule;

    std::optional<DateWindow> fit_window;
    std::optional<DateWindow> report_window;
    std::optional<DateWindow> forecast_window;

    std::vector<std::pair<std::string, DateWindow>> scenarios;  // file order
    std::optional<std::string> gate_reference;
    double gate_k = 10;

    BaSettings ba;
    std::optional<double> cps1_baseline_pct;

    std::string synth_kind = "load";
    std::string synth_model = "seasonal";
    std::optional<DateWindow> synth_window;
    double synth_level_mw = 2500;
    double synth_noise_sigma_mw = 30;
    std::optional<DateWindow> synth_suppress_window;
    double synth_suppress_fraction = 0;

    std::optional<Timestamp> telemetry_start;
    std::int64_t telemetry_minutes = 0;
    double telemetry_freq_sigma_hz = 0.012;
    double telemetry_race_noise_mw = 8;
    double telemetry_race_freq_gain = 0.8;
    std::int64_t telemetry_insane_every = 0;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text, const std::string& origin);

    // FNV-1a over the sorted normalized entries; identical settings hash
    // identically regardless of comments or ordering.
    std::uint64_t config_hash() const;
    std::string config_hash_hex() const;

    const DateWindow& require_window(const std::optional<DateWindow>& w, const char* key) const;
    const std::string& require_path(const std::optional<std::string>& p, const char* key) const;

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace loadtk
