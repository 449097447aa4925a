#include "weather.hpp"

#include <cmath>
#include <map>

#include "errors.hpp"

namespace loadtk {

double celsius_to_fahrenheit(double c) { return c * 9.0 / 5.0 + 32.0; }
double fahrenheit_to_celsius(double f) { return (f - 32.0) * 5.0 / 9.0; }
double kmh_to_mph(double kmh) { return kmh / 1.609344; }

double wind_chill_c(double temp_c, double wind_kmh) {
    const double t_f = celsius_to_fahrenheit(temp_c);
    const double v_mph = kmh_to_mph(wind_kmh);
    if (t_f > 50.0 || v_mph <= 3.0) return temp_c;
    const double vp = std::pow(v_mph, 0.16);
    const double wc_f = 35.74 + 0.6215 * t_f - 35.75 * vp + 0.4275 * t_f * vp;
    return fahrenheit_to_celsius(wc_f);
}

double heat_index_c(double temp_c, double rh_pct) {
    if (!(rh_pct >= 0.0 && rh_pct <= 100.0))
        throw DataError("relative humidity outside [0,100]: " + std::to_string(rh_pct));
    const double t = celsius_to_fahrenheit(temp_c);
    const double rh = rh_pct;

    // Steadman-consistent simple formula, already averaged with the temperature.
    const double simple = 0.5 * (t + 61.0 + (t - 68.0) * 1.2 + rh * 0.094);
    if (simple < 80.0) return fahrenheit_to_celsius(simple);

    double hi = -42.379 + 2.04901523 * t + 10.14333127 * rh - 0.22475541 * t * rh -
                6.83783e-3 * t * t - 5.481717e-2 * rh * rh + 1.22874e-3 * t * t * rh +
                8.5282e-4 * t * rh * rh - 1.99e-6 * t * t * rh * rh;
    if (rh < 13.0 && t >= 80.0 && t <= 112.0) {
        hi -= ((13.0 - rh) / 4.0) * std::sqrt((17.0 - std::fabs(t - 95.0)) / 17.0);
    } else if (rh > 85.0 && t >= 80.0 && t <= 87.0) {
        hi += ((rh - 85.0) / 10.0) * ((87.0 - t) / 5.0);
    }
    return fahrenheit_to_celsius(hi);
}

std::vector<std::string> validate_weather(const std::vector<WeatherRecord>& records) {
    std::vector<std::string> issues;
    struct DayRange {
        double lo = 1e30, hi = -1e30, decl_min = 0, decl_max = 0;
        bool seen = false;
    };
    std::map<std::int64_t, DayRange> days;
    for (const auto& r : records) {
        if (r.rel_humidity_pct < 0.0 || r.rel_humidity_pct > 100.0)
            issues.push_back(format_hour(r.timestamp) + ": humidity outside [0,100]");
        if (r.wind_speed_kmh < 0.0)
            issues.push_back(format_hour(r.timestamp) + ": negative wind speed");
        auto& d = days[days_from_civil(r.timestamp.date())];
        d.lo = std::min(d.lo, r.temp_c);
        d.hi = std::max(d.hi, r.temp_c);
        d.decl_min = r.daily_min_c;
        d.decl_max = r.daily_max_c;
        d.seen = true;
    }
    constexpr double kTol = 0.5;
    for (const auto& [day, d] : days) {
        if (!d.seen) continue;
        if (d.lo < d.decl_min - kTol || d.hi > d.decl_max + kTol)
            issues.push_back(format_date(civil_from_days(day)) +
                             ": hourly temperatures fall outside the declared daily min/max");
    }
    return issues;
}

}  // namespace loadtk
