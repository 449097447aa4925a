#pragma once

#include <cstdint>
#include <vector>

#include "calendar.hpp"

namespace loadtk {

// One clock minute of balancing telemetry.
struct MinuteSample {
    std::int64_t minute = 0;  // minutes since 1970-01-01T00:00
    double ni_actual_mw = 0;
    double ni_scheduled_mw = 0;
    double freq_hz = 60;
    double freq_sched_hz = 60;
};

// Balancing-authority control constants. The frequency bias is quoted in
// MW per 0.1 Hz and is negative by convention (more generation when
// frequency sags).
struct BaSettings {
    double bias_mw_per_tenth_hz = -41.9;
    double epsilon1_hz = 0.018;  // annual one-minute frequency target

    void validate() const;  // throws ValidationError
};

// Frequency band accepted as physically plausible; minutes outside are
// rejected from scoring and counted.
inline constexpr double kFreqSaneLowHz = 59.0;
inline constexpr double kFreqSaneHighHz = 61.0;

// Reportable ACE: interchange error minus the bias-scaled frequency error.
double race_mw(const MinuteSample& s, const BaSettings& ba);

// Per-minute compliance product (RACE / -10B) * dF, in Hz^2.
double compliance_factor_minute(const MinuteSample& s, const BaSettings& ba);

struct Cps1Result {
    std::size_t minutes_used = 0;
    std::size_t minutes_rejected = 0;
    double mean_cf_hz2 = 0;
    double compliance_factor = 0;  // mean_cf / epsilon1^2
    double cps1_pct = 0;           // (2 - compliance_factor) * 100
};

// Scores the provided minutes as one period. Throws DataError when no
// minute survives the frequency sanity band.
Cps1Result cps1(const std::vector<MinuteSample>& minutes, const BaSettings& ba);

// Drop in CPS1 relative to a baseline score, in percent of the baseline.
// Positive means control performance got worse.
double cps1_drop_pct(double baseline_cps1, double current_cps1);

// Collapses raw telemetry rows (possibly several per minute) onto clock
// minutes by averaging every field within the minute.
struct TelemetryRow {
    MinuteStamp stamp;
    double ni_actual_mw = 0;
    double ni_scheduled_mw = 0;
    double freq_hz = 60;
    double freq_sched_hz = 60;
};
std::vector<MinuteSample> minute_average(const std::vector<TelemetryRow>& rows);

}  // namespace loadtk
