#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "errors.hpp"
#include "synth.hpp"
#include "weather.hpp"

using namespace loadtk;
using doctest::Approx;

namespace {

LoadScenario base_scenario() {
    LoadScenario sc;
    sc.start = {2016, 1, 1};
    sc.end = {2016, 4, 1};
    sc.seed = 11;
    sc.noise_sigma_mw = 25;
    sc.model = planted_seasonal();
    return sc;
}

}  // namespace

TEST_CASE("counter rng is a pure function of seed, stream, counter") {
    CounterRng a(123), b(123), c(124);
    CHECK(a.uniform(1, 5) == b.uniform(1, 5));
    CHECK(a.normal(3, 77) == b.normal(3, 77));
    CHECK(a.uniform(1, 5) != c.uniform(1, 5));
    CHECK(a.uniform(1, 5) != a.uniform(2, 5));
    CHECK(a.uniform(1, 5) != a.uniform(1, 6));

    // access order cannot matter
    double first = a.normal(4, 9);
    a.normal(4, 10);
    a.uniform(2, 0);
    CHECK(a.normal(4, 9) == first);
}

TEST_CASE("counter rng moments") {
    CounterRng rng(2024);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform(9, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double z = rng.normal(10, i);
        sum += z;
        sq += z * z;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.05);
    CHECK(std::fabs(var - 1.0) < 0.1);
}

TEST_CASE("fixed-date holidays cover each year") {
    auto days = synth_holidays(2016, 2018);
    CHECK(days.size() == 30);
    for (std::size_t i = 1; i < days.size(); ++i) CHECK(days[i - 1] < days[i]);
    int in_2017 = 0;
    for (const auto& d : days) in_2017 += d.year == 2017;
    CHECK(in_2017 == 10);
    CHECK(std::find(days.begin(), days.end(), CivilDate{2016, 7, 1}) != days.end());
    CHECK(std::find(days.begin(), days.end(), CivilDate{2017, 12, 25}) != days.end());
}

TEST_CASE("generated load is deterministic in the seed") {
    LoadScenario sc = base_scenario();
    SynthData a = generate_load(sc);
    SynthData b = generate_load(sc);
    REQUIRE(a.load.size() == b.load.size());
    for (std::size_t i = 0; i < a.load.size(); ++i) {
        CHECK(a.load[i].first == b.load[i].first);
        CHECK(a.load[i].second == b.load[i].second);
    }
    REQUIRE(a.weather.size() == b.weather.size());
    for (std::size_t i = 0; i < a.weather.size(); ++i)
        CHECK(a.weather[i].temp_c == b.weather[i].temp_c);

    sc.seed = 12;
    SynthData c = generate_load(sc);
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.load.size(); ++i) same += a.load[i].second == c.load[i].second;
    CHECK(same < a.load.size() / 10);
}

TEST_CASE("generated span is contiguous and clean") {
    LoadScenario sc = base_scenario();
    SynthData d = generate_load(sc);
    // Jan + Feb(leap) + Mar 2016
    CHECK(d.load.size() == std::size_t((31 + 29 + 31) * 24));
    CHECK(d.weather.size() == d.load.size());
    CHECK(d.truth.unsuppressed_mw.size() == d.load.size());
    CHECK(d.load.front().first == Timestamp{2016, 1, 1, 0});
    CHECK(d.load.back().first == Timestamp{2016, 3, 31, 23});
    for (std::size_t i = 1; i < d.load.size(); ++i)
        CHECK(d.load[i].first.hour_index() == d.load[i - 1].first.hour_index() + 1);

    CHECK(validate_weather(d.weather).empty());
    CHECK_FALSE(d.calendar.holidays.empty());
    CHECK(d.calendar.is_holiday({2016, 1, 1}));
}

TEST_CASE("weather repeats by calendar date across years") {
    LoadScenario sc = base_scenario();
    sc.start = {2016, 1, 1};
    sc.end = {2019, 1, 1};
    sc.noise_sigma_mw = 0;
    SynthData d = generate_load(sc);

    auto idx = [&](Timestamp t) {
        return static_cast<std::size_t>(t.hour_index() - Timestamp{2016, 1, 1, 0}.hour_index());
    };
    const auto& w = d.weather;

    std::size_t i17 = idx({2017, 5, 10, 14});
    std::size_t i18 = idx({2018, 5, 10, 14});
    CHECK(w[i17].temp_c == w[i18].temp_c);
    CHECK(w[i17].wind_speed_kmh == w[i18].wind_speed_kmh);
    CHECK(w[i17].rel_humidity_pct == w[i18].rel_humidity_pct);
    CHECK(w[i17].daily_max_c == w[i18].daily_max_c);
    CHECK(w[i17].daily_min_c == w[i18].daily_min_c);

    // leap day borrows the previous day's pattern
    CHECK(w[idx({2016, 2, 29, 8})].temp_c == w[idx({2016, 2, 28, 8})].temp_c);
    // but distinct hours of one day still differ
    CHECK(w[idx({2017, 5, 10, 3})].temp_c != w[i17].temp_c);
}

TEST_CASE("noiseless load equals the planted truth") {
    LoadScenario sc = base_scenario();
    sc.noise_sigma_mw = 0;
    SynthData d = generate_load(sc);
    for (std::size_t i = 0; i < d.load.size(); ++i)
        CHECK(d.load[i].second == d.truth.unsuppressed_mw[i]);
    CHECK(d.truth.suppressed_hours == 0);
    CHECK(d.truth.suppressed_energy_mwh == 0.0);
}

TEST_CASE("per-year level offsets shift entire years") {
    LoadScenario sc = base_scenario();
    sc.start = {2016, 12, 30};
    sc.end = {2017, 1, 3};
    sc.noise_sigma_mw = 0;
    SynthData flat = generate_load(sc);
    sc.model.level_offsets_mw[2017] = 100;
    SynthData stepped = generate_load(sc);
    for (std::size_t i = 0; i < flat.load.size(); ++i) {
        double want = flat.load[i].second + (flat.load[i].first.year == 2017 ? 100.0 : 0.0);
        CHECK(stepped.load[i].second == Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("suppression removes the planted fraction and records the truth") {
    LoadScenario sc = base_scenario();
    sc.noise_sigma_mw = 0;
    sc.suppression = Suppression{{2016, 2, 1}, {2016, 3, 1}, 0.12};
    SynthData d = generate_load(sc);

    std::int64_t h0 = Timestamp{2016, 1, 1, 0}.hour_index();
    std::int64_t s0 = Timestamp{2016, 2, 1, 0}.hour_index();
    std::int64_t s1 = Timestamp{2016, 3, 1, 0}.hour_index();
    CHECK(d.truth.suppressed_hours == std::size_t(s1 - s0));

    double removed = 0;
    for (std::size_t i = 0; i < d.load.size(); ++i) {
        std::int64_t h = h0 + static_cast<std::int64_t>(i);
        double unsup = d.truth.unsuppressed_mw[i];
        if (h >= s0 && h < s1) {
            CHECK(d.load[i].second == Approx(unsup * 0.88).epsilon(1e-12));
            removed += unsup * 0.12;
        } else {
            CHECK(d.load[i].second == unsup);
        }
    }
    CHECK(d.truth.suppressed_energy_mwh == Approx(removed).epsilon(1e-9));
}

TEST_CASE("flat-month texture keeps monthly means close") {
    LoadScenario sc;
    sc.start = {2016, 1, 1};
    sc.end = {2017, 1, 1};
    sc.seed = 3;
    sc.noise_sigma_mw = 0;
    sc.model = planted_flat_month();
    SynthData d = generate_load(sc);

    double month_sum[13] = {};
    int month_n[13] = {};
    for (const auto& [t, v] : d.load) {
        month_sum[t.month] += v;
        month_n[t.month] += 1;
    }
    double lo = 1e12, hi = -1e12;
    for (int m = 1; m <= 12; ++m) {
        double mean = month_sum[m] / month_n[m];
        lo = std::min(lo, mean);
        hi = std::max(hi, mean);
    }
    // monthly means stay within a narrow band around the level
    CHECK(hi - lo < 40.0);

    sc.model = planted_seasonal();
    SynthData seasonal = generate_load(sc);
    double jan = 0, jun = 0;
    int jan_n = 0, jun_n = 0;
    for (const auto& [t, v] : seasonal.load) {
        if (t.month == 1) jan += v, ++jan_n;
        if (t.month == 6) jun += v, ++jun_n;
    }
    // winter-peaking texture separates January from June by hundreds of MW
    CHECK(jan / jan_n - jun / jun_n > 200.0);
}

TEST_CASE("scenario validation") {
    LoadScenario sc = base_scenario();
    sc.end = sc.start;
    CHECK_THROWS_AS(generate_load(sc), ValidationError);

    sc = base_scenario();
    sc.noise_sigma_mw = -1;
    CHECK_THROWS_AS(generate_load(sc), ValidationError);

    sc = base_scenario();
    sc.suppression = Suppression{{2016, 2, 1}, {2016, 3, 1}, 1.0};
    CHECK_THROWS_AS(generate_load(sc), ValidationError);

    sc = base_scenario();
    sc.model.coef.resize(10);
    CHECK_THROWS_AS(generate_load(sc), ValidationError);
}

TEST_CASE("telemetry truth matches rescoring the generated minutes") {
    TelemetryScenario sc;
    sc.start = {2020, 3, 1, 0};
    sc.minutes = 7 * 1440;
    sc.seed = 5;
    TelemetryData d = generate_telemetry(sc);
    REQUIRE(d.minutes.size() == std::size_t(sc.minutes));
    CHECK(d.minutes.front().minute == Timestamp{2020, 3, 1, 0}.hour_index() * 60);
    for (std::size_t i = 1; i < d.minutes.size(); ++i)
        CHECK(d.minutes[i].minute == d.minutes[i - 1].minute + 1);

    Cps1Result r = cps1(d.minutes, sc.ba);
    CHECK(r.mean_cf_hz2 == d.truth.mean_cf_hz2);
    CHECK(r.cps1_pct == d.truth.cps1_pct);
    CHECK(r.minutes_used == d.truth.minutes_used);
    CHECK(r.minutes_rejected == d.truth.minutes_rejected);
    CHECK(d.truth.minutes_rejected == 0);

    // positive gain couples race to the frequency error and costs score
    CHECK(d.truth.cps1_pct < 200.0);
    CHECK(d.truth.cps1_pct > 100.0);
}

TEST_CASE("telemetry determinism and injected bad minutes") {
    TelemetryScenario sc;
    sc.start = {2020, 3, 1, 0};
    sc.minutes = 2000;
    sc.seed = 9;
    sc.insane_every = 250;
    TelemetryData a = generate_telemetry(sc);
    TelemetryData b = generate_telemetry(sc);
    REQUIRE(a.minutes.size() == b.minutes.size());
    for (std::size_t i = 0; i < a.minutes.size(); ++i) {
        CHECK(a.minutes[i].freq_hz == b.minutes[i].freq_hz);
        CHECK(a.minutes[i].ni_actual_mw == b.minutes[i].ni_actual_mw);
    }
    CHECK(a.truth.minutes_rejected == std::size_t(2000 / 250));
    Cps1Result r = cps1(a.minutes, sc.ba);
    CHECK(r.minutes_rejected == a.truth.minutes_rejected);
    CHECK(r.cps1_pct == a.truth.cps1_pct);
}
