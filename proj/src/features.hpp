#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calendar.hpp"
#include "series.hpp"
#include "weather.hpp"

namespace loadtk {

// Column layout of the hourly regressor vector. One-hot calendar blocks,
// holiday-interacted daily extremes, and season-gated weather terms crossed
// with hour of day. Keep the offsets in this order; serialized models index
// into it directly.
namespace cols {
inline constexpr int kWeekday = 0;         // 7: Mon..Sun
inline constexpr int kMonth = 7;           // 12
inline constexpr int kHour = 19;           // 24
inline constexpr int kWeekdayHour = 43;    // 168: weekday*24 + hour
inline constexpr int kWeekend = 211;       // 1
inline constexpr int kHoliday = 212;       // 12: holiday by month
inline constexpr int kTmaxHoliday = 224;   // 12: daily max temp on holidays, by month
inline constexpr int kTminHoliday = 236;   // 12
inline constexpr int kWindChillHour = 248; // 24: cold-season wind chill by hour
inline constexpr int kHeatIndexHour = 272; // 24: warm-season heat index by hour
inline constexpr int kTempHour = 296;      // 24
inline constexpr int kTemp2Hour = 320;     // 24: squared temperature by hour
inline constexpr int kIntercept = 344;     // 1
inline constexpr int kWidth = 345;
}  // namespace cols

std::vector<std::string> feature_names();

// Fills row[0..kWidth) for one joined hour. row must have kWidth entries;
// untouched entries are zeroed first.
void build_row(const JoinedRow& joined, const CalendarConfig& cal, double* row);

struct FeatureMatrix {
    std::vector<std::int64_t> hours;  // hour index per row
    std::vector<double> rows;         // row-major, hours.size() x cols::kWidth
    std::vector<double> targets;      // load per row

    std::size_t row_count() const { return hours.size(); }
    const double* row(std::size_t i) const { return rows.data() + i * cols::kWidth; }
};

FeatureMatrix build_matrix(const JoinedTable& table, const CalendarConfig& cal);

}  // namespace loadtk
