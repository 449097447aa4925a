#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "calendar.hpp"
#include "weather.hpp"

namespace loadtk {

// Hourly samples on a contiguous civil-hour grid. Gaps are explicit NaN
// markers, never silent skips.
class HourlySeries {
public:
    HourlySeries() = default;
    HourlySeries(std::int64_t start_hour, std::vector<double> values)
        : start_hour_(start_hour), values_(std::move(values)) {}

    static double missing() { return std::numeric_limits<double>::quiet_NaN(); }
    static bool is_missing(double v) { return !(v == v); }

    std::int64_t start_hour() const { return start_hour_; }
    std::int64_t end_hour() const { return start_hour_ + static_cast<std::int64_t>(values_.size()); }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool covers(std::int64_t hour) const { return hour >= start_hour_ && hour < end_hour(); }
    // NaN outside the covered range.
    double at_hour(std::int64_t hour) const {
        return covers(hour) ? values_[static_cast<std::size_t>(hour - start_hour_)] : missing();
    }
    void set_hour(std::int64_t hour, double v) {
        if (covers(hour)) values_[static_cast<std::size_t>(hour - start_hour_)] = v;
    }
    Timestamp timestamp_at(std::size_t i) const {
        return Timestamp::from_hour_index(start_hour_ + static_cast<std::int64_t>(i));
    }

    std::size_t missing_count() const;
    // Restrict to [from, to) hour indices; hours outside the stored range come back missing.
    HourlySeries slice(std::int64_t from_hour, std::int64_t to_hour) const;

private:
    std::int64_t start_hour_ = 0;
    std::vector<double> values_;
};

// Builds a series from (timestamp, value) samples. Out-of-order rows are a
// DataError; a duplicated hour invalidates that hour and counts it as dropped
// (fall-back DST duplicates are thereby excluded from daily aggregation).
struct SeriesBuild {
    HourlySeries series;
    std::size_t duplicate_hours = 0;
};
SeriesBuild series_from_samples(const std::vector<std::pair<Timestamp, double>>& samples);

// One hour of joined load + weather, post-alignment.
struct JoinedRow {
    std::int64_t hour = 0;
    double load_mw = 0;
    WeatherRecord weather;
};

struct JoinedTable {
    std::vector<JoinedRow> rows;       // strictly increasing hour
    std::size_t dropped_hours = 0;     // hours in the common range missing on either side
    std::int64_t overlap_start = 0;    // common range [start, end)
    std::int64_t overlap_end = 0;

    bool empty() const { return rows.empty(); }
    Timestamp first_timestamp() const { return Timestamp::from_hour_index(rows.front().hour); }
    Timestamp last_timestamp() const { return Timestamp::from_hour_index(rows.back().hour); }
};

// Keeps only hours inside the common time range where the load and every
// required weather field are present and finite.
// Throws DataError when the ranges do not overlap at all.
JoinedTable align(const HourlySeries& load, const std::vector<WeatherRecord>& weather);

// Daily energy of one series; only complete 24-hour civil days qualify.
struct DailyEnergy {
    CivilDate date;
    double energy_mwh = 0;
};
struct DailyRollup {
    std::vector<DailyEnergy> days;
    std::size_t excluded_days = 0;  // days touched by the series but missing hours
};
DailyRollup daily_rollup(const HourlySeries& series);

// Paired daily view used by the energy-variation metrics.
struct DailyAggregate {
    CivilDate date;
    double energy_actual_mwh = 0;
    double energy_estimated_mwh = 0;
    double max_temp_c = std::numeric_limits<double>::quiet_NaN();
    double min_temp_c = std::numeric_limits<double>::quiet_NaN();
};

// One aggregate per civil day where all 24 hours carry both actual and
// estimated values. Daily max/min temperatures are taken from the weather
// records of that day when provided.
std::vector<DailyAggregate> daily_aggregates(const HourlySeries& actual,
                                             const HourlySeries& estimated,
                                             const std::vector<WeatherRecord>& weather = {});

}  // namespace loadtk
