#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "calendar.hpp"
#include "series.hpp"
#include "weather.hpp"

namespace loadtk {

// Load + weather + holiday files read, checked and joined into one bundle.
struct Dataset {
    HourlySeries load;
    std::size_t duplicate_hours = 0;
    std::vector<WeatherRecord> weather;
    CalendarConfig calendar;
    JoinedTable joined;
};

Dataset load_dataset_files(const std::string& load_csv, const std::string& weather_csv,
                           const std::optional<std::string>& holiday_csv);

// Subcommand entry points shared by the CLI and the C API. Each reads its
// run configuration, writes its outputs under out_dir and throws
// ValidationError or DataError on failure. Outputs are deterministic:
// identical config and inputs produce byte-identical files.

// Fits one model on fit.window and writes model.json.
void cmd_fit(const std::string& config_path, const std::string& out_dir);

// Rolling counterfactual estimate over report.window plus the analysis
// stack: scenario error stats, mean-shift gates, daily and monthly energy
// variation, accumulated difference, ramp summaries.
// Writes report.json, estimates.csv, daily.csv.
void cmd_report(const std::string& config_path, const std::string& out_dir);

// Scores a day-ahead forecast file against metered load, month by month,
// optionally against a baseline forecast. Writes forecast_eval.json.
void cmd_forecast_eval(const std::string& config_path, const std::string& out_dir);

// Control-performance score from minute telemetry. Writes cps1.json.
void cmd_cps1(const std::string& config_path, const std::string& out_dir);

// Generates a synthetic dataset (load + weather + holidays, or telemetry)
// with its ground truth. Writes the dataset CSVs and truth.json.
void cmd_synth(const std::string& config_path, const std::string& out_dir, std::uint64_t seed);

}  // namespace loadtk
