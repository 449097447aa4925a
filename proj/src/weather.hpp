#pragma once

#include <vector>

#include "calendar.hpp"

namespace loadtk {

// One hourly weather observation. Storage is metric; the perceived-temperature
// formulas convert to imperial units internally.
struct WeatherRecord {
    Timestamp timestamp;
    double temp_c = 0;
    double wind_speed_kmh = 0;   // >= 0
    double rel_humidity_pct = 0; // 0..100
    double daily_max_c = 0;
    double daily_min_c = 0;
};

double celsius_to_fahrenheit(double c);
double fahrenheit_to_celsius(double f);
double kmh_to_mph(double kmh);

// NWS wind chill. Defined for T <= 50 F and V > 3 mph; outside that region the
// air temperature is returned unchanged.
double wind_chill_c(double temp_c, double wind_kmh);

// NWS heat index: simple averaged formula when it stays below 80 F, otherwise
// the Rothfusz regression with the low-RH and high-RH adjustments.
// Throws DataError when rh_pct is outside [0, 100].
double heat_index_c(double temp_c, double rh_pct);

// Per-day check that temp_c stays within [daily_min_c, daily_max_c] with a
// 0.5 C rounding tolerance, plus humidity/wind range checks.
// Returns human-readable violation messages (empty when clean).
std::vector<std::string> validate_weather(const std::vector<WeatherRecord>& records);

}  // namespace loadtk
