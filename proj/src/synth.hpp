#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "calendar.hpp"
#include "cps.hpp"
#include "features.hpp"
#include "weather.hpp"

namespace loadtk {

// Deterministic counter-keyed generator: every draw is a pure function of
// (seed, stream, counter), so regeneration order never matters.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    // [0, 1)
    double uniform(std::uint64_t stream, std::uint64_t counter) const;
    // standard normal via Box-Muller on two sub-draws
    double normal(std::uint64_t stream, std::uint64_t counter) const;

private:
    std::uint64_t seed_;
};

// Ground-truth load process: a flat per-year level plus a fixed coefficient
// vector applied to the regressors of each hour.
struct PlantedModel {
    double level_mw = 2500;
    std::map<int, double> level_offsets_mw;  // optional per-year additions
    std::vector<double> coef;                // cols::kWidth
};

// Strong seasonal/diurnal texture, resembling a winter-peaking system.
PlantedModel planted_seasonal();
// Texture whose monthly means barely move; useful when the analysis window
// must stay quiet except for deliberately injected events.
PlantedModel planted_flat_month();

// Removes a fraction of the true load over [start, end).
struct Suppression {
    CivilDate start;
    CivilDate end;
    double fraction = 0;
};

struct LoadScenario {
    CivilDate start;  // inclusive, day resolution
    CivilDate end;    // exclusive
    std::uint64_t seed = 1;
    double noise_sigma_mw = 30;
    PlantedModel model;
    std::optional<Suppression> suppression;
};

struct SynthTruth {
    std::vector<double> unsuppressed_mw;  // one per generated hour
    double suppressed_energy_mwh = 0;     // exactly sum of fraction * unsuppressed
    std::size_t suppressed_hours = 0;
};

struct SynthData {
    std::vector<std::pair<Timestamp, double>> load;
    std::vector<WeatherRecord> weather;
    CalendarConfig calendar;  // holidays filled for the covered years
    SynthTruth truth;
};

// Weather is periodic across years by calendar date (Feb 29 repeats Feb 28),
// so identical dates in different years see identical weather.
SynthData generate_load(const LoadScenario& scenario);

// Fixed-date holiday set used by generated datasets.
std::vector<CivilDate> synth_holidays(int year_from, int year_to);

struct TelemetryScenario {
    Timestamp start;  // first minute, at the top of this hour
    std::int64_t minutes = 0;
    std::uint64_t seed = 1;
    double freq_sigma_hz = 0.012;
    double race_noise_mw = 8;
    // race component proportional to the frequency error; drives the score
    // below the no-correlation value of 200
    double race_freq_gain = 0.8;
    // when positive, every n-th minute gets an implausible frequency
    std::int64_t insane_every = 0;
    BaSettings ba;
};

struct TelemetryTruth {
    double mean_cf_hz2 = 0;
    double cps1_pct = 0;
    std::size_t minutes_used = 0;
    std::size_t minutes_rejected = 0;
};

struct TelemetryData {
    std::vector<MinuteSample> minutes;
    TelemetryTruth truth;
};

TelemetryData generate_telemetry(const TelemetryScenario& scenario);

}  // namespace loadtk
