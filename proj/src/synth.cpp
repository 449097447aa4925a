#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace loadtk {

namespace {

constexpr std::uint64_t kStreamTemp = 1;
constexpr std::uint64_t kStreamWind = 2;
constexpr std::uint64_t kStreamHumidity = 3;
constexpr std::uint64_t kStreamLoad = 4;
constexpr std::uint64_t kStreamFreq = 5;
constexpr std::uint64_t kStreamRace = 6;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// day of year on a fixed 365-day calendar; Feb 29 collapses onto Feb 28 so
// every date keeps the same index in leap and common years
int periodic_day_of_year(int month, int day) {
    static constexpr int cum[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    if (month == 2 && day == 29) day = 28;
    return cum[month - 1] + day - 1;
}

}  // namespace

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
    std::uint64_t h = mix64(mix64(mix64(seed_) ^ (stream * 0x9e3779b97f4a7c15ULL)) ^
                            (counter * 0xd6e8feb86659fd93ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t counter) const {
    std::uint64_t h1 = mix64(mix64(mix64(seed_) ^ (stream * 0x9e3779b97f4a7c15ULL)) ^
                             ((2 * counter) * 0xd6e8feb86659fd93ULL));
    std::uint64_t h2 = mix64(mix64(mix64(seed_) ^ (stream * 0x9e3779b97f4a7c15ULL)) ^
                             ((2 * counter + 1) * 0xd6e8feb86659fd93ULL));
    double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PlantedModel planted_seasonal() {
    PlantedModel m;
    m.level_mw = 2500;
    m.coef.assign(cols::kWidth, 0.0);
    constexpr double tau = 2.0 * std::numbers::pi;
    static constexpr double month_mw[12] = {260, 240, 170, 60,  -60, -140,
                                            -160, -150, -80, 40, 170, 250};
    static constexpr double weekday_mw[7] = {35, 40, 38, 36, 30, -45, -60};
    for (int w = 0; w < 7; ++w) m.coef[cols::kWeekday + w] = weekday_mw[w];
    for (int mo = 0; mo < 12; ++mo) {
        m.coef[cols::kMonth + mo] = month_mw[mo];
        m.coef[cols::kHoliday + mo] = -30;
        m.coef[cols::kTmaxHoliday + mo] = -0.8;
        m.coef[cols::kTminHoliday + mo] = -0.5;
    }
    for (int h = 0; h < 24; ++h) {
        m.coef[cols::kHour + h] =
            150 * std::sin(tau * (h - 5) / 24.0) + 45 * std::sin(2 * tau * (h - 2) / 24.0);
        m.coef[cols::kWindChillHour + h] = -2.2;
        m.coef[cols::kHeatIndexHour + h] = 1.2;
        m.coef[cols::kTempHour + h] = -1.5;
        m.coef[cols::kTemp2Hour + h] = 0.045;
    }
    for (int w = 0; w < 7; ++w)
        for (int h = 0; h < 24; ++h)
            m.coef[cols::kWeekdayHour + w * 24 + h] = ((w * 7 + h) % 13 - 6) * 2.5;
    m.coef[cols::kWeekend] = -40;
    return m;
}

PlantedModel planted_flat_month() {
    PlantedModel m;
    m.level_mw = 2500;
    m.coef.assign(cols::kWidth, 0.0);
    constexpr double tau = 2.0 * std::numbers::pi;
    static constexpr double weekday_mw[7] = {8, 10, 9, 7, 5, -12, -15};
    for (int w = 0; w < 7; ++w) m.coef[cols::kWeekday + w] = weekday_mw[w];
    for (int mo = 0; mo < 12; ++mo) m.coef[cols::kHoliday + mo] = -15;
    for (int h = 0; h < 24; ++h) {
        m.coef[cols::kHour + h] = 60 * std::sin(tau * (h - 6) / 24.0);
        m.coef[cols::kWindChillHour + h] = -0.15;
        m.coef[cols::kHeatIndexHour + h] = 0.1;
        m.coef[cols::kTempHour + h] = (h % 2 == 0) ? -0.25 : 0.25;
        m.coef[cols::kTemp2Hour + h] = 0.02;
    }
    m.coef[cols::kWeekend] = -10;
    return m;
}

std::vector<CivilDate> synth_holidays(int year_from, int year_to) {
    static constexpr std::pair<int, int> fixed[] = {
        {1, 1}, {2, 15}, {4, 10}, {5, 18}, {7, 1},
        {8, 3}, {9, 7},  {10, 12}, {11, 11}, {12, 25}};
    std::vector<CivilDate> out;
    for (int y = year_from; y <= year_to; ++y)
        for (auto [m, d] : fixed) out.push_back(CivilDate{y, m, d});
    return out;
}

SynthData generate_load(const LoadScenario& scenario) {
    if (!is_valid_date(scenario.start) || !is_valid_date(scenario.end))
        throw ValidationError("scenario dates are invalid");
    if (!(scenario.start < scenario.end))
        throw ValidationError("scenario end must fall after its start");
    if (scenario.noise_sigma_mw < 0) throw ValidationError("noise sigma must be non-negative");
    if (scenario.model.coef.size() != static_cast<std::size_t>(cols::kWidth))
        throw ValidationError("planted model needs one coefficient per regressor");
    if (scenario.suppression) {
        const auto& s = *scenario.suppression;
        if (!is_valid_date(s.start) || !is_valid_date(s.end) || !(s.start < s.end))
            throw ValidationError("suppression window is invalid");
        if (s.fraction < 0 || s.fraction >= 1)
            throw ValidationError("suppression fraction must lie in [0, 1)");
    }

    CounterRng rng(scenario.seed);
    constexpr double tau = 2.0 * std::numbers::pi;

    SynthData out;
    out.calendar.set_holidays(synth_holidays(scenario.start.year, scenario.end.year));

    const std::int64_t first_day = days_from_civil(scenario.start);
    const std::int64_t last_day = days_from_civil(scenario.end);  // exclusive

    std::int64_t supp_from = 0, supp_to = 0;
    if (scenario.suppression) {
        supp_from = days_from_civil(scenario.suppression->start) * 24;
        supp_to = days_from_civil(scenario.suppression->end) * 24;
    }

    const auto n_hours = static_cast<std::size_t>((last_day - first_day) * 24);
    out.load.reserve(n_hours);
    out.weather.reserve(n_hours);
    out.truth.unsuppressed_mw.reserve(n_hours);

    std::vector<double> row(cols::kWidth);
    std::vector<double> day_temps(24);

    for (std::int64_t d = first_day; d < last_day; ++d) {
        CivilDate date = civil_from_days(d);
        int doy = periodic_day_of_year(date.month, date.day);
        double season = 2.0 + 17.0 * std::sin(tau * (doy - 106) / 365.0);

        for (int h = 0; h < 24; ++h) {
            std::uint64_t wx_counter = static_cast<std::uint64_t>(doy) * 24 + h;
            double temp = season + 5.0 * std::sin(tau * (h - 9) / 24.0) +
                          3.0 * rng.normal(kStreamTemp, wx_counter);
            day_temps[h] = temp;
        }
        double tmax = *std::max_element(day_temps.begin(), day_temps.end());
        double tmin = *std::min_element(day_temps.begin(), day_temps.end());

        for (int h = 0; h < 24; ++h) {
            std::uint64_t wx_counter = static_cast<std::uint64_t>(doy) * 24 + h;
            WeatherRecord wx;
            wx.timestamp = Timestamp{date.year, date.month, date.day, h};
            wx.temp_c = day_temps[h];
            wx.wind_speed_kmh = std::max(
                0.0, 14.0 + 6.0 * std::sin(tau * (doy - 300) / 365.0) +
                         5.0 * rng.normal(kStreamWind, wx_counter));
            wx.rel_humidity_pct = std::clamp(
                65.0 + 15.0 * std::sin(tau * (doy - 330) / 365.0) +
                    12.0 * rng.normal(kStreamHumidity, wx_counter),
                5.0, 100.0);
            wx.daily_max_c = tmax;
            wx.daily_min_c = tmin;
            out.weather.push_back(wx);

            std::int64_t hour_index = d * 24 + h;
            JoinedRow jr{hour_index, 0.0, wx};
            build_row(jr, out.calendar, row.data());
            double level = scenario.model.level_mw;
            if (auto it = scenario.model.level_offsets_mw.find(date.year);
                it != scenario.model.level_offsets_mw.end())
                level += it->second;
            double y = level;
            for (int c = 0; c < cols::kWidth; ++c) y += row[c] * scenario.model.coef[c];
            if (scenario.noise_sigma_mw > 0)
                y += scenario.noise_sigma_mw *
                     rng.normal(kStreamLoad, static_cast<std::uint64_t>(hour_index));

            out.truth.unsuppressed_mw.push_back(y);
            double actual = y;
            if (scenario.suppression && hour_index >= supp_from && hour_index < supp_to) {
                double removed = scenario.suppression->fraction * y;
                actual = y - removed;
                out.truth.suppressed_energy_mwh += removed;
                ++out.truth.suppressed_hours;
            }
            out.load.emplace_back(Timestamp{date.year, date.month, date.day, h}, actual);
        }
    }
    return out;
}

TelemetryData generate_telemetry(const TelemetryScenario& scenario) {
    if (scenario.minutes <= 0) throw ValidationError("telemetry scenario needs a positive length");
    if (scenario.freq_sigma_hz < 0 || scenario.race_noise_mw < 0)
        throw ValidationError("telemetry noise levels must be non-negative");
    scenario.ba.validate();

    CounterRng rng(scenario.seed);
    TelemetryData out;
    out.minutes.reserve(static_cast<std::size_t>(scenario.minutes));

    const std::int64_t m0 = scenario.start.hour_index() * 60;
    const double b10 = 10.0 * scenario.ba.bias_mw_per_tenth_hz;

    double cf_sum = 0;
    for (std::int64_t i = 0; i < scenario.minutes; ++i) {
        auto counter = static_cast<std::uint64_t>(m0 + i);
        MinuteSample s;
        s.minute = m0 + i;
        s.ni_scheduled_mw = 0;
        s.freq_sched_hz = 60;

        bool insane = scenario.insane_every > 0 && (i + 1) % scenario.insane_every == 0;
        if (insane) {
            s.freq_hz = 57.5;
            s.ni_actual_mw = 0;
            ++out.truth.minutes_rejected;
        } else {
            double df = scenario.freq_sigma_hz * rng.normal(kStreamFreq, counter);
            double race = scenario.race_freq_gain * (-b10) * df +
                          scenario.race_noise_mw * rng.normal(kStreamRace, counter);
            s.freq_hz = 60.0 + df;
            s.ni_actual_mw = race + b10 * df;
            cf_sum += compliance_factor_minute(s, scenario.ba);
            ++out.truth.minutes_used;
        }
        out.minutes.push_back(s);
    }
    if (out.truth.minutes_used == 0)
        throw ValidationError("telemetry scenario rejects every minute");
    out.truth.mean_cf_hz2 = cf_sum / static_cast<double>(out.truth.minutes_used);
    double eps2 = scenario.ba.epsilon1_hz * scenario.ba.epsilon1_hz;
    out.truth.cps1_pct = (2.0 - out.truth.mean_cf_hz2 / eps2) * 100.0;
    return out;
}

}  // namespace loadtk
