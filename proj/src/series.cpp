#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "errors.hpp"

namespace loadtk {

std::size_t HourlySeries::missing_count() const {
    std::size_t n = 0;
    for (double v : values_)
        if (is_missing(v)) ++n;
    return n;
}

HourlySeries HourlySeries::slice(std::int64_t from_hour, std::int64_t to_hour) const {
    if (to_hour <= from_hour) return HourlySeries(from_hour, {});
    std::vector<double> out(static_cast<std::size_t>(to_hour - from_hour), missing());
    for (std::int64_t h = from_hour; h < to_hour; ++h)
        out[static_cast<std::size_t>(h - from_hour)] = at_hour(h);
    return HourlySeries(from_hour, std::move(out));
}

SeriesBuild series_from_samples(const std::vector<std::pair<Timestamp, double>>& samples) {
    SeriesBuild out;
    if (samples.empty()) return out;

    std::int64_t prev = samples.front().first.hour_index() - 1;
    for (const auto& [ts, _] : samples) {
        std::int64_t h = ts.hour_index();
        if (h < prev)
            throw DataError("load samples out of order at " + format_hour(ts));
        prev = h;
    }

    std::int64_t start = samples.front().first.hour_index();
    std::int64_t end = samples.back().first.hour_index() + 1;
    std::vector<double> values(static_cast<std::size_t>(end - start), HourlySeries::missing());
    std::vector<bool> dup(values.size(), false);

    for (const auto& [ts, v] : samples) {
        auto i = static_cast<std::size_t>(ts.hour_index() - start);
        if (!HourlySeries::is_missing(values[i]) || dup[i]) {
            // repeated civil hour (e.g. the duplicated hour at fall-back):
            // neither copy is trustworthy, so the hour stays missing
            if (!dup[i]) {
                dup[i] = true;
                ++out.duplicate_hours;
            }
            values[i] = HourlySeries::missing();
            continue;
        }
        values[i] = v;
    }

    out.series = HourlySeries(start, std::move(values));
    return out;
}

JoinedTable align(const HourlySeries& load, const std::vector<WeatherRecord>& weather) {
    if (load.empty() || weather.empty())
        throw DataError("load and weather ranges do not overlap");

    std::map<std::int64_t, const WeatherRecord*> wx;
    std::int64_t wx_min = std::numeric_limits<std::int64_t>::max();
    std::int64_t wx_max = std::numeric_limits<std::int64_t>::min();
    for (const auto& rec : weather) {
        std::int64_t h = rec.timestamp.hour_index();
        wx[h] = &rec;
        wx_min = std::min(wx_min, h);
        wx_max = std::max(wx_max, h);
    }

    JoinedTable out;
    out.overlap_start = std::max(load.start_hour(), wx_min);
    out.overlap_end = std::min(load.end_hour(), wx_max + 1);
    if (out.overlap_start >= out.overlap_end)
        throw DataError("load and weather ranges do not overlap");

    auto usable = [](const WeatherRecord& r) {
        return std::isfinite(r.temp_c) && std::isfinite(r.wind_speed_kmh) &&
               std::isfinite(r.rel_humidity_pct) && std::isfinite(r.daily_max_c) &&
               std::isfinite(r.daily_min_c);
    };

    for (std::int64_t h = out.overlap_start; h < out.overlap_end; ++h) {
        double l = load.at_hour(h);
        auto it = wx.find(h);
        if (HourlySeries::is_missing(l) || !std::isfinite(l) || it == wx.end() ||
            !usable(*it->second)) {
            ++out.dropped_hours;
            continue;
        }
        out.rows.push_back(JoinedRow{h, l, *it->second});
    }
    if (out.rows.empty())
        throw DataError("no usable hours after joining load with weather");
    return out;
}

DailyRollup daily_rollup(const HourlySeries& series) {
    DailyRollup out;
    if (series.empty()) return out;

    // walk whole civil days that intersect the series
    std::int64_t first_day = series.start_hour() / 24;
    if (series.start_hour() % 24 != 0 && series.start_hour() < 0) --first_day;  // floor
    std::int64_t last_day = (series.end_hour() + 23) / 24;

    for (std::int64_t d = first_day; d < last_day; ++d) {
        double sum = 0;
        bool complete = true;
        for (int h = 0; h < 24; ++h) {
            double v = series.at_hour(d * 24 + h);
            if (HourlySeries::is_missing(v)) {
                complete = false;
                break;
            }
            sum += v;
        }
        if (!complete) {
            ++out.excluded_days;
            continue;
        }
        Timestamp ts = Timestamp::from_hour_index(d * 24);
        out.days.push_back(DailyEnergy{CivilDate{ts.year, ts.month, ts.day}, sum});
    }
    return out;
}

std::vector<DailyAggregate> daily_aggregates(const HourlySeries& actual,
                                             const HourlySeries& estimated,
                                             const std::vector<WeatherRecord>& weather) {
    std::map<std::int64_t, std::pair<double, double>> extremes;  // day -> (max, min)
    for (const auto& rec : weather) {
        std::int64_t d = rec.timestamp.hour_index() / 24;
        extremes[d] = {rec.daily_max_c, rec.daily_min_c};
    }

    std::vector<DailyAggregate> out;
    std::int64_t from = std::max(actual.start_hour(), estimated.start_hour());
    std::int64_t to = std::min(actual.end_hour(), estimated.end_hour());
    if (from >= to) return out;

    std::int64_t first_day = from / 24;
    std::int64_t last_day = (to + 23) / 24;
    for (std::int64_t d = first_day; d < last_day; ++d) {
        double sum_a = 0, sum_e = 0;
        bool complete = true;
        for (int h = 0; h < 24; ++h) {
            double a = actual.at_hour(d * 24 + h);
            double e = estimated.at_hour(d * 24 + h);
            if (HourlySeries::is_missing(a) || HourlySeries::is_missing(e)) {
                complete = false;
                break;
            }
            sum_a += a;
            sum_e += e;
        }
        if (!complete) continue;
        Timestamp ts = Timestamp::from_hour_index(d * 24);
        DailyAggregate agg;
        agg.date = CivilDate{ts.year, ts.month, ts.day};
        agg.energy_actual_mwh = sum_a;
        agg.energy_estimated_mwh = sum_e;
        if (auto it = extremes.find(d); it != extremes.end()) {
            agg.max_temp_c = it->second.first;
            agg.min_temp_c = it->second.second;
        }
        out.push_back(agg);
    }
    return out;
}

}  // namespace loadtk
