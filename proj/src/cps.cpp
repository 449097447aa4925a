#include "cps.hpp"

#include <map>

#include "errors.hpp"

namespace loadtk {

void BaSettings::validate() const {
    if (!(bias_mw_per_tenth_hz < 0))
        throw ValidationError("frequency bias must be negative (MW per 0.1 Hz)");
    if (!(epsilon1_hz > 0)) throw ValidationError("epsilon1 must be positive");
}

double race_mw(const MinuteSample& s, const BaSettings& ba) {
    double interchange_error = s.ni_actual_mw - s.ni_scheduled_mw;
    double freq_error = s.freq_hz - s.freq_sched_hz;
    return interchange_error - 10.0 * ba.bias_mw_per_tenth_hz * freq_error;
}

double compliance_factor_minute(const MinuteSample& s, const BaSettings& ba) {
    double freq_error = s.freq_hz - s.freq_sched_hz;
    return race_mw(s, ba) / (-10.0 * ba.bias_mw_per_tenth_hz) * freq_error;
}

Cps1Result cps1(const std::vector<MinuteSample>& minutes, const BaSettings& ba) {
    ba.validate();
    Cps1Result out;
    double cf_sum = 0;
    for (const auto& s : minutes) {
        if (s.freq_hz < kFreqSaneLowHz || s.freq_hz > kFreqSaneHighHz) {
            ++out.minutes_rejected;
            continue;
        }
        cf_sum += compliance_factor_minute(s, ba);
        ++out.minutes_used;
    }
    if (out.minutes_used == 0)
        throw DataError("no telemetry minutes inside the frequency sanity band");
    out.mean_cf_hz2 = cf_sum / static_cast<double>(out.minutes_used);
    out.compliance_factor = out.mean_cf_hz2 / (ba.epsilon1_hz * ba.epsilon1_hz);
    out.cps1_pct = (2.0 - out.compliance_factor) * 100.0;
    return out;
}

double cps1_drop_pct(double baseline_cps1, double current_cps1) {
    if (baseline_cps1 == 0) throw DataError("baseline score is zero, relative drop undefined");
    return (baseline_cps1 - current_cps1) / baseline_cps1 * 100.0;
}

std::vector<MinuteSample> minute_average(const std::vector<TelemetryRow>& rows) {
    struct Acc {
        double ni_a = 0, ni_s = 0, f = 0, fs = 0;
        std::size_t n = 0;
    };
    std::map<std::int64_t, Acc> by_minute;
    for (const auto& r : rows) {
        Acc& a = by_minute[r.stamp.minute_index()];
        a.ni_a += r.ni_actual_mw;
        a.ni_s += r.ni_scheduled_mw;
        a.f += r.freq_hz;
        a.fs += r.freq_sched_hz;
        a.n += 1;
    }
    std::vector<MinuteSample> out;
    out.reserve(by_minute.size());
    for (const auto& [minute, a] : by_minute) {
        auto n = static_cast<double>(a.n);
        out.push_back(MinuteSample{minute, a.ni_a / n, a.ni_s / n, a.f / n, a.fs / n});
    }
    return out;
}

}  // namespace loadtk
