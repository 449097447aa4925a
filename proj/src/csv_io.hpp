#pragma once

#include <string>
#include <utility>
#include <vector>

#include "calendar.hpp"
#include "cps.hpp"
#include "weather.hpp"

namespace loadtk {

// Plain comma-separated files, no quoting. Lines starting with '#' are
// comments and are skipped wherever they appear; the first real line must be
// the header. Header mismatches are ValidationErrors, bad cell values are
// DataErrors carrying path:line.

// header: timestamp,load_mw
std::vector<std::pair<Timestamp, double>> read_load_csv(const std::string& path);

// header: timestamp,temp_c,wind_kmh,rh_pct,daily_max_c,daily_min_c
std::vector<WeatherRecord> read_weather_csv(const std::string& path);

// header: date
std::vector<CivilDate> read_holiday_csv(const std::string& path);

// header: timestamp,forecast_mw
std::vector<std::pair<Timestamp, double>> read_forecast_csv(const std::string& path);

// header: timestamp,ni_actual_mw,ni_scheduled_mw,freq_hz[,freq_sched_hz]
// timestamps at minute or second resolution
std::vector<TelemetryRow> read_telemetry_csv(const std::string& path);

// Writers emit the given comment lines first (each prefixed with "# "),
// then the header, then data. Doubles are written in shortest form that
// parses back to the identical value.
void write_load_csv(const std::string& path,
                    const std::vector<std::pair<Timestamp, double>>& rows,
                    const std::vector<std::string>& comments = {});
void write_weather_csv(const std::string& path, const std::vector<WeatherRecord>& rows,
                       const std::vector<std::string>& comments = {});
void write_holiday_csv(const std::string& path, const std::vector<CivilDate>& dates,
                       const std::vector<std::string>& comments = {});
void write_telemetry_csv(const std::string& path, const std::vector<MinuteSample>& rows,
                         const std::vector<std::string>& comments = {});

std::string format_minute(std::int64_t minute_index);
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace loadtk
