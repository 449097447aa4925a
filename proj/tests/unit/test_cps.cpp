#include "doctest.h"

#include <cmath>
#include <vector>

#include "cps.hpp"
#include "errors.hpp"

using namespace loadtk;
using doctest::Approx;

namespace {

MinuteSample minute(std::int64_t m, double ni_act, double ni_sched, double f,
                    double f_sched = 60.0) {
    MinuteSample s;
    s.minute = m;
    s.ni_actual_mw = ni_act;
    s.ni_scheduled_mw = ni_sched;
    s.freq_hz = f;
    s.freq_sched_hz = f_sched;
    return s;
}

}  // namespace

TEST_CASE("settings validation") {
    BaSettings ok;
    CHECK_NOTHROW(ok.validate());

    BaSettings pos_bias = ok;
    pos_bias.bias_mw_per_tenth_hz = 41.9;
    CHECK_THROWS_AS(pos_bias.validate(), ValidationError);

    BaSettings zero_eps = ok;
    zero_eps.epsilon1_hz = 0;
    CHECK_THROWS_AS(zero_eps.validate(), ValidationError);
}

TEST_CASE("reportable ace for a tenth-hertz sag") {
    // bias -41.9 MW/0.1 Hz, frequency 0.01 Hz low, interchange on schedule:
    // the area owes 4.19 MW of support it is not delivering
    BaSettings ba;
    MinuteSample s = minute(0, 0, 0, 59.99);
    CHECK(race_mw(s, ba) == Approx(-4.19).epsilon(1e-12));

    // delivering exactly the owed support nets to zero
    MinuteSample balanced = minute(0, 4.19, 0, 59.99);
    CHECK(race_mw(balanced, ba) == Approx(0.0).scale(1));

    // schedule offsets shift the interchange term
    MinuteSample sched = minute(0, 10, 4, 60.0);
    CHECK(race_mw(sched, ba) == Approx(6.0));
}

TEST_CASE("per-minute compliance factor worked example") {
    BaSettings ba;
    // frequency 0.01 Hz high with the interchange on schedule: race +4.19 MW,
    // aligned with the frequency error, cf = (4.19 / 419) * 0.01 = 1e-4 Hz^2
    MinuteSample w = minute(0, 0, 0, 60.01);
    CHECK(race_mw(w, ba) == Approx(4.19).epsilon(1e-12));
    double cf = compliance_factor_minute(w, ba);
    CHECK(cf == Approx(1e-4).epsilon(1e-10));

    Cps1Result r = cps1({w}, ba);
    CHECK(r.minutes_used == 1);
    CHECK(r.mean_cf_hz2 == Approx(1e-4).epsilon(1e-10));
    CHECK(r.compliance_factor == Approx(1e-4 / (0.018 * 0.018)).epsilon(1e-10));
    CHECK(r.cps1_pct == Approx(169.1358).epsilon(1e-5));
    CHECK(std::fabs(r.cps1_pct - 169.1) < 0.1);
}

TEST_CASE("zero ace scores exactly 200") {
    BaSettings ba;
    std::vector<MinuteSample> minutes;
    for (int i = 0; i < 1440; ++i) minutes.push_back(minute(i, 0, 0, 60.0));
    Cps1Result r = cps1(minutes, ba);
    CHECK(r.minutes_used == 1440);
    CHECK(r.mean_cf_hz2 == 0.0);
    CHECK(r.compliance_factor == 0.0);
    CHECK(r.cps1_pct == 200.0);
}

TEST_CASE("compliance factor equal to the frequency target scores 100") {
    BaSettings ba;
    // dF = epsilon1 with the interchange on schedule: cf = epsilon1^2 each minute
    std::vector<MinuteSample> minutes;
    for (int i = 0; i < 60; ++i) minutes.push_back(minute(i, 0, 0, 60.0 + ba.epsilon1_hz));
    Cps1Result r = cps1(minutes, ba);
    CHECK(r.compliance_factor == Approx(1.0).epsilon(1e-12));
    CHECK(r.cps1_pct == Approx(100.0).epsilon(1e-12));

    // power-of-two target makes every step exact, the score is bit-exact 100
    BaSettings coarse;
    coarse.epsilon1_hz = 0.25;
    std::vector<MinuteSample> exact;
    for (int i = 0; i < 1440; ++i) exact.push_back(minute(i, 0, 0, 60.25));
    Cps1Result e = cps1(exact, coarse);
    CHECK(e.mean_cf_hz2 == 0.0625);
    CHECK(e.compliance_factor == 1.0);
    CHECK(e.cps1_pct == 100.0);
}

TEST_CASE("anticorrelated control raises the score above 200") {
    BaSettings ba;
    std::vector<MinuteSample> minutes;
    for (int i = 0; i < 200; ++i) {
        double df = (i % 2 == 0) ? 0.01 : -0.01;
        // race opposing the frequency error supports the interconnection
        double race = -5.0 * df / 0.01;
        minutes.push_back(minute(i, race + 10.0 * ba.bias_mw_per_tenth_hz * df, 0, 60.0 + df));
    }
    Cps1Result r = cps1(minutes, ba);
    CHECK(r.cps1_pct > 200.0);
}

TEST_CASE("insane frequencies are rejected, empty scoring refused") {
    BaSettings ba;
    std::vector<MinuteSample> minutes;
    for (int i = 0; i < 10; ++i) minutes.push_back(minute(i, 1, 0, 60.0));
    minutes.push_back(minute(10, 1, 0, 57.5));
    minutes.push_back(minute(11, 1, 0, 62.1));
    minutes.push_back(minute(12, 1, 0, 59.0));  // band edge stays in

    Cps1Result r = cps1(minutes, ba);
    CHECK(r.minutes_used == 11);
    CHECK(r.minutes_rejected == 2);

    std::vector<MinuteSample> all_bad = {minute(0, 1, 0, 57.0), minute(1, 1, 0, 63.0)};
    CHECK_THROWS_WITH_AS(cps1(all_bad, ba), doctest::Contains("sanity"), DataError);
}

TEST_CASE("nonzero scheduled frequency shifts the error") {
    BaSettings ba;
    MinuteSample s = minute(0, 0, 0, 59.99, 59.98);
    // dF = +0.01 against the schedule, race = -10B * dF = +4.19
    CHECK(race_mw(s, ba) == Approx(-10.0 * ba.bias_mw_per_tenth_hz * 0.01).epsilon(1e-9));
}

TEST_CASE("score drop against a baseline") {
    CHECK(cps1_drop_pct(185.0, 164.0) == Approx((185.0 - 164.0) / 185.0 * 100));
    CHECK(cps1_drop_pct(150.0, 165.0) == Approx(-10.0));
    CHECK_THROWS_AS(cps1_drop_pct(0.0, 100.0), DataError);
}

TEST_CASE("sub-minute telemetry is averaged onto clock minutes") {
    TelemetryRow a;
    a.stamp = {{2020, 5, 1, 0}, 0, 10};
    a.ni_actual_mw = 10;
    a.ni_scheduled_mw = 2;
    a.freq_hz = 59.98;
    a.freq_sched_hz = 60;
    TelemetryRow b = a;
    b.stamp.second = 40;
    b.ni_actual_mw = 14;
    b.freq_hz = 60.02;
    TelemetryRow c = a;
    c.stamp.minute = 1;
    c.ni_actual_mw = 20;

    auto minutes = minute_average({a, b, c});
    REQUIRE(minutes.size() == 2);
    CHECK(minutes[0].minute == a.stamp.minute_index());
    CHECK(minutes[0].ni_actual_mw == Approx(12.0));
    CHECK(minutes[0].ni_scheduled_mw == Approx(2.0));
    CHECK(minutes[0].freq_hz == Approx(60.0));
    CHECK(minutes[1].minute == c.stamp.minute_index());
    CHECK(minutes[1].ni_actual_mw == Approx(20.0));
    CHECK(minutes[1].minute == minutes[0].minute + 1);
}
