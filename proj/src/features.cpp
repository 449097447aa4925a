#include "features.hpp"

#include <algorithm>
#include <cstring>

namespace loadtk {

std::vector<std::string> feature_names() {
    static const char* wd[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
    std::vector<std::string> names(cols::kWidth);
    for (int w = 0; w < 7; ++w) names[cols::kWeekday + w] = std::string("weekday_") + wd[w];
    for (int m = 0; m < 12; ++m) names[cols::kMonth + m] = "month_" + std::to_string(m + 1);
    for (int h = 0; h < 24; ++h) names[cols::kHour + h] = "hour_" + std::to_string(h);
    for (int w = 0; w < 7; ++w)
        for (int h = 0; h < 24; ++h)
            names[cols::kWeekdayHour + w * 24 + h] =
                std::string(wd[w]) + "_h" + std::to_string(h);
    names[cols::kWeekend] = "weekend";
    for (int m = 0; m < 12; ++m) {
        names[cols::kHoliday + m] = "holiday_m" + std::to_string(m + 1);
        names[cols::kTmaxHoliday + m] = "tmax_holiday_m" + std::to_string(m + 1);
        names[cols::kTminHoliday + m] = "tmin_holiday_m" + std::to_string(m + 1);
    }
    for (int h = 0; h < 24; ++h) {
        names[cols::kWindChillHour + h] = "windchill_h" + std::to_string(h);
        names[cols::kHeatIndexHour + h] = "heatindex_h" + std::to_string(h);
        names[cols::kTempHour + h] = "temp_h" + std::to_string(h);
        names[cols::kTemp2Hour + h] = "temp2_h" + std::to_string(h);
    }
    names[cols::kIntercept] = "intercept";
    return names;
}

void build_row(const JoinedRow& joined, const CalendarConfig& cal, double* row) {
    std::memset(row, 0, sizeof(double) * cols::kWidth);

    Timestamp ts = Timestamp::from_hour_index(joined.hour);
    CalendarFlags flags = calendar_flags(ts, cal);
    const WeatherRecord& wx = joined.weather;

    int w = ts.weekday();
    int m = ts.month - 1;
    int h = ts.hour;

    row[cols::kWeekday + w] = 1;
    row[cols::kMonth + m] = 1;
    row[cols::kHour + h] = 1;
    row[cols::kWeekdayHour + w * 24 + h] = 1;
    if (flags.weekend) row[cols::kWeekend] = 1;
    if (flags.holiday_month) {
        int hm = *flags.holiday_month - 1;
        row[cols::kHoliday + hm] = 1;
        row[cols::kTmaxHoliday + hm] = wx.daily_max_c;
        row[cols::kTminHoliday + hm] = wx.daily_min_c;
    }
    if (flags.windchill_season)
        row[cols::kWindChillHour + h] = wind_chill_c(wx.temp_c, wx.wind_speed_kmh);
    if (flags.heat_season)
        row[cols::kHeatIndexHour + h] = heat_index_c(wx.temp_c, wx.rel_humidity_pct);
    row[cols::kTempHour + h] = wx.temp_c;
    row[cols::kTemp2Hour + h] = wx.temp_c * wx.temp_c;
    row[cols::kIntercept] = 1;
}

FeatureMatrix build_matrix(const JoinedTable& table, const CalendarConfig& cal) {
    FeatureMatrix out;
    out.hours.reserve(table.rows.size());
    out.rows.resize(table.rows.size() * cols::kWidth);
    out.targets.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const JoinedRow& r = table.rows[i];
        out.hours.push_back(r.hour);
        out.targets.push_back(r.load_mw);
        build_row(r, cal, out.rows.data() + i * cols::kWidth);
    }
    return out;
}

}  // namespace loadtk
