#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "loadtk.h"

namespace {

std::string fresh_dir() {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() /
               ("loadtk_capi_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 90 days of synthetic hourly data starting 2019-01-01 (a Tuesday). The load
// is an exact function of weekday and hour so a fitted model should track it
// closely out of sample.
struct Fixture {
    std::string dir;
    std::string load_csv;
    std::string weather_csv;
    std::string holiday_csv;
};

Fixture make_fixture() {
    Fixture f;
    f.dir = fresh_dir();
    f.load_csv = f.dir + "/load.csv";
    f.weather_csv = f.dir + "/weather.csv";
    f.holiday_csv = f.dir + "/holidays.csv";

    int month_days[3] = {31, 28, 31};
    std::string load = "timestamp,load_mw\n";
    std::string weather = "timestamp,temp_c,wind_kmh,rh_pct,daily_max_c,daily_min_c\n";
    int day_index = 0;
    char stamp[32];
    char row[160];
    for (int m = 0; m < 3; ++m) {
        for (int d = 1; d <= month_days[m]; ++d, ++day_index) {
            int weekday = (day_index + 1) % 7;  // Monday = 0
            for (int h = 0; h < 24; ++h) {
                std::snprintf(stamp, sizeof stamp, "2019-%02d-%02dT%02d:00", m + 1, d, h);
                double mw = 2000.0 + 10.0 * h + 3.0 * weekday;
                std::snprintf(row, sizeof row, "%s,%.1f\n", stamp, mw);
                load += row;
                double temp = 5.0 + 5.0 * std::sin(2.0 * M_PI * h / 24.0);
                std::snprintf(row, sizeof row, "%s,%.4f,15,60,10,0\n", stamp, temp);
                weather += row;
            }
        }
    }
    write_file(f.load_csv, load);
    write_file(f.weather_csv, weather);
    write_file(f.holiday_csv, "date\n2019-01-01\n2019-02-18\n");
    return f;
}

}  // namespace

TEST_CASE("library reports a version") {
    CHECK(std::string(loadtk_version()) == "0.1.0");
}

TEST_CASE("scalar weather helpers") {
    double out = 0;
    // 0 F at 15 mph is a textbook wind chill point near -19.4 F
    CHECK(loadtk_wind_chill_c(-17.7778, 24.14016, &out) == LOADTK_OK);
    CHECK(std::fabs(out - (-19.3967 - 32.0) / 1.8) < 0.01);
    CHECK(std::string(loadtk_last_error()).empty());

    // calm or warm air passes through
    CHECK(loadtk_wind_chill_c(15.0, 20.0, &out) == LOADTK_OK);
    CHECK(out == 15.0);

    CHECK(loadtk_heat_index_c(32.2222, 50.0, &out) == LOADTK_OK);
    CHECK(std::fabs(out - (94.597 - 32.0) / 1.8) < 0.01);

    CHECK(loadtk_wind_chill_c(0.0, -5.0, &out) == LOADTK_ERR_VALIDATION);
    CHECK(loadtk_wind_chill_c(0.0, 10.0, nullptr) == LOADTK_ERR_VALIDATION);
    CHECK(loadtk_heat_index_c(30.0, 150.0, &out) == LOADTK_ERR_DATA);
    CHECK(std::string(loadtk_last_error()).find("humidity") != std::string::npos);

    // a successful call clears the sticky message
    CHECK(loadtk_heat_index_c(30.0, 50.0, &out) == LOADTK_OK);
    CHECK(std::string(loadtk_last_error()).empty());
}

TEST_CASE("ace and compliance helpers") {
    double out = 0;
    CHECK(loadtk_race_mw(0, 0, 59.99, 60.0, -41.9, &out) == LOADTK_OK);
    CHECK(std::fabs(out - (-4.19)) < 1e-11);
    CHECK(loadtk_cf_minute_hz2(0, 0, 60.01, 60.0, -41.9, &out) == LOADTK_OK);
    CHECK(std::fabs(out - 1e-4) < 1e-12);
    // the bias convention is negative; a positive value is rejected
    CHECK(loadtk_race_mw(0, 0, 60.0, 60.0, 41.9, &out) == LOADTK_ERR_VALIDATION);
}

TEST_CASE("cps1 over arrays") {
    const size_t n = 1440;
    std::vector<double> ni_a(n, 0.0), ni_s(n, 0.0), freq(n, 60.0);
    double score = 0;
    size_t used = 0, rejected = 0;
    CHECK(loadtk_cps1(ni_a.data(), ni_s.data(), freq.data(), nullptr, n, -41.9, 0.018, &score,
                      &used, &rejected) == LOADTK_OK);
    CHECK(score == 200.0);
    CHECK(used == n);
    CHECK(rejected == 0);

    // single minute at 60.01 Hz with zero interchange error
    double one_a = 0, one_s = 0, one_f = 60.01;
    CHECK(loadtk_cps1(&one_a, &one_s, &one_f, nullptr, 1, -41.9, 0.018, &score, nullptr,
                      nullptr) == LOADTK_OK);
    CHECK(std::fabs(score - 169.1358) < 1e-3);

    // an explicit schedule column equal to 60 matches the default
    std::vector<double> sched(n, 60.0);
    double score2 = 0;
    CHECK(loadtk_cps1(ni_a.data(), ni_s.data(), freq.data(), sched.data(), n, -41.9, 0.018,
                      &score2, nullptr, nullptr) == LOADTK_OK);
    CHECK(score2 == 200.0);

    // implausible frequencies are skipped and counted
    freq[7] = 57.5;
    CHECK(loadtk_cps1(ni_a.data(), ni_s.data(), freq.data(), nullptr, n, -41.9, 0.018, &score,
                      &used, &rejected) == LOADTK_OK);
    CHECK(used == n - 1);
    CHECK(rejected == 1);

    double bad_f[2] = {57.5, 62.5};
    double zero[2] = {0, 0};
    CHECK(loadtk_cps1(zero, zero, bad_f, nullptr, 2, -41.9, 0.018, &score, nullptr, nullptr) ==
          LOADTK_ERR_DATA);
    CHECK(std::string(loadtk_last_error()).find("sanity") != std::string::npos);

    CHECK(loadtk_cps1(nullptr, ni_s.data(), freq.data(), nullptr, n, -41.9, 0.018, &score,
                      nullptr, nullptr) == LOADTK_ERR_VALIDATION);
}

TEST_CASE("error statistics and the anomaly gate") {
    double actual[3] = {3, 5, 7};
    double est[3] = {1, 2, 3};
    double mean = 0, var = 0;
    CHECK(loadtk_error_stats(actual, est, 3, &mean, &var) == LOADTK_OK);
    CHECK(std::fabs(mean - 3.0) < 1e-12);
    CHECK(std::fabs(var - 2.0 / 3.0) < 1e-12);
    CHECK(loadtk_error_stats(actual, est, 3, nullptr, &var) == LOADTK_ERR_VALIDATION);

    double diff = 0, scale = 0;
    int significant = -1;
    CHECK(loadtk_anomaly_gate(-13.04, 1.26e4, 26712, -127.28, 1.53e4, 4008, 10.0, &diff, &scale,
                              &significant) == LOADTK_OK);
    CHECK(std::fabs(diff - 114.24) < 1e-9);
    CHECK(std::fabs(scale - 1.953808) < 1e-4);
    CHECK(significant == 1);

    // the same spread is not ten standard errors when the windows are tiny
    CHECK(loadtk_anomaly_gate(-13.04, 1.26e4, 20, -127.28, 1.53e4, 8, 10.0, &diff, &scale,
                              &significant) == LOADTK_OK);
    CHECK(significant == 0);
}

TEST_CASE("forecast scores") {
    double actual[2] = {100, 200};
    double est[2] = {90, 210};
    double mae = 0, mape = 0;
    CHECK(loadtk_mae_mape(actual, est, 2, &mae, &mape) == LOADTK_OK);
    CHECK(std::fabs(mae - 10.0) < 1e-12);
    CHECK(std::fabs(mape - 7.5) < 1e-12);

    double zeros[2] = {0, 0};
    CHECK(loadtk_mae_mape(zeros, est, 2, &mae, &mape) == LOADTK_OK);
    CHECK(std::isnan(mape));

    double x[5] = {1, 2, 3, 4, 5};
    double y[5] = {2, 4, 6, 8, 10};
    double r = 0, p = 1;
    CHECK(loadtk_pearson(x, y, 5, &r, &p) == LOADTK_OK);
    CHECK(r == 1.0);
    CHECK(p == 0.0);
    CHECK(loadtk_pearson(x, y, 2, &r, &p) == LOADTK_ERR_DATA);
}

TEST_CASE("date helpers") {
    int64_t hours = 0;
    CHECK(loadtk_hours_between("2019-03-01", "2019-03-31", &hours) == LOADTK_OK);
    CHECK(hours == 720);
    CHECK(loadtk_hours_between("2020-02-01", "2020-03-01", &hours) == LOADTK_OK);
    CHECK(hours == 696);
    CHECK(loadtk_hours_between("2019-03-31", "2019-03-01", &hours) == LOADTK_ERR_VALIDATION);
    CHECK(loadtk_hours_between("soon", "2019-03-01", &hours) == LOADTK_ERR_VALIDATION);
    CHECK(std::string(loadtk_last_error()).find("YYYY-MM-DD") != std::string::npos);
}

TEST_CASE("dataset and model round trip") {
    Fixture f = make_fixture();

    loadtk_dataset* ds = nullptr;
    REQUIRE(loadtk_dataset_open(f.load_csv.c_str(), f.weather_csv.c_str(),
                                f.holiday_csv.c_str(), &ds) == LOADTK_OK);
    int64_t first = 0, end = 0;
    uint64_t rows = 0, dropped = 0;
    CHECK(loadtk_dataset_info(ds, &first, &end, &rows, &dropped) == LOADTK_OK);
    CHECK(rows == 90 * 24);
    CHECK(end - first == 90 * 24);
    CHECK(dropped == 0);

    loadtk_model* model = nullptr;
    REQUIRE(loadtk_fit(ds, "2019-01-01", "2019-03-01", "auto", &model) == LOADTK_OK);

    int64_t hours = 0;
    REQUIRE(loadtk_hours_between("2019-03-01", "2019-03-31", &hours) == LOADTK_OK);
    std::vector<double> est(static_cast<size_t>(hours), 0.0);
    REQUIRE(loadtk_estimate(ds, model, "2019-03-01", "2019-03-31", est.data()) == LOADTK_OK);

    // the planted pattern lives in the regressor space, so the out-of-sample
    // estimate should track the actual rule tightly
    double worst = 0;
    for (int64_t i = 0; i < hours; ++i) {
        REQUIRE(std::isfinite(est[static_cast<size_t>(i)]));
        int day_index = 59 + static_cast<int>(i / 24);
        int weekday = (day_index + 1) % 7;
        double truth = 2000.0 + 10.0 * (i % 24) + 3.0 * weekday;
        worst = std::max(worst, std::fabs(est[static_cast<size_t>(i)] - truth));
    }
    CHECK(worst < 10.0);

    // persisting the model must not change its predictions
    std::string model_path = f.dir + "/model.json";
    REQUIRE(loadtk_model_save_json(model, model_path.c_str()) == LOADTK_OK);
    loadtk_model* reopened = nullptr;
    REQUIRE(loadtk_model_open_json(model_path.c_str(), &reopened) == LOADTK_OK);
    std::vector<double> est2(static_cast<size_t>(hours), 0.0);
    REQUIRE(loadtk_estimate(ds, reopened, "2019-03-01", "2019-03-31", est2.data()) == LOADTK_OK);
    CHECK(std::memcmp(est.data(), est2.data(), est.size() * sizeof(double)) == 0);

    // hours with no weather stay NaN
    std::vector<double> april(24, 0.0);
    REQUIRE(loadtk_estimate(ds, model, "2019-04-01", "2019-04-02", april.data()) == LOADTK_OK);
    for (double v : april) CHECK(std::isnan(v));

    loadtk_model_close(reopened);
    loadtk_model_close(model);
    loadtk_dataset_close(ds);
}

TEST_CASE("dataset and fit errors carry their cause") {
    Fixture f = make_fixture();
    loadtk_dataset* ds = nullptr;
    CHECK(loadtk_dataset_open("/no/such/load.csv", f.weather_csv.c_str(), nullptr, &ds) ==
          LOADTK_ERR_DATA);
    CHECK(ds == nullptr);

    REQUIRE(loadtk_dataset_open(f.load_csv.c_str(), f.weather_csv.c_str(), nullptr, &ds) ==
            LOADTK_OK);
    loadtk_model* model = nullptr;
    CHECK(loadtk_fit(ds, "2019-13-01", "2019-03-01", "auto", &model) == LOADTK_ERR_VALIDATION);
    CHECK(loadtk_fit(ds, "2019-03-01", "2019-01-01", "auto", &model) == LOADTK_ERR_VALIDATION);
    CHECK(loadtk_fit(ds, "2019-01-01", "2019-03-01", "sorta", &model) == LOADTK_ERR_VALIDATION);
    // a window the data never touches
    CHECK(loadtk_fit(ds, "2031-01-01", "2031-03-01", "auto", &model) == LOADTK_ERR_DATA);
    CHECK(loadtk_model_open_json("/no/such/model.json", &model) == LOADTK_ERR_DATA);

    std::string garbage = f.dir + "/garbage.json";
    write_file(garbage, "not json at all");
    CHECK(loadtk_model_open_json(garbage.c_str(), &model) == LOADTK_ERR_DATA);

    CHECK(loadtk_dataset_info(nullptr, nullptr, nullptr, nullptr, nullptr) ==
          LOADTK_ERR_VALIDATION);
    loadtk_dataset_close(ds);
}

TEST_CASE("batch runners mirror the command line") {
    std::string dir = fresh_dir();
    std::string synth_cfg = dir + "/synth.conf";
    write_file(synth_cfg,
               "synth.kind = load\n"
               "synth.model = seasonal\n"
               "synth.window = 2019-01-01..2019-04-01\n"
               "synth.level_mw = 2500\n"
               "synth.noise_sigma_mw = 20\n");
    std::string data_dir = dir + "/data";
    REQUIRE(loadtk_run_synth(synth_cfg.c_str(), data_dir.c_str(), 42) == LOADTK_OK);
    CHECK(std::filesystem::exists(data_dir + "/load.csv"));
    CHECK(std::filesystem::exists(data_dir + "/weather.csv"));
    CHECK(std::filesystem::exists(data_dir + "/holidays.csv"));
    CHECK(std::filesystem::exists(data_dir + "/truth.json"));

    // the generated files open cleanly through the dataset API
    loadtk_dataset* ds = nullptr;
    std::string load_csv = data_dir + "/load.csv";
    std::string weather_csv = data_dir + "/weather.csv";
    std::string holiday_csv = data_dir + "/holidays.csv";
    REQUIRE(loadtk_dataset_open(load_csv.c_str(), weather_csv.c_str(), holiday_csv.c_str(),
                                &ds) == LOADTK_OK);
    uint64_t rows = 0;
    CHECK(loadtk_dataset_info(ds, nullptr, nullptr, &rows, nullptr) == LOADTK_OK);
    CHECK(rows == 90 * 24);
    loadtk_dataset_close(ds);

    std::string fit_cfg = dir + "/fit.conf";
    write_file(fit_cfg, "data.load_csv = " + load_csv +
                            "\n"
                            "data.weather_csv = " +
                            weather_csv +
                            "\n"
                            "data.holiday_csv = " +
                            holiday_csv +
                            "\n"
                            "model.lambda_policy = auto\n"
                            "fit.window = 2019-01-01..2019-03-01\n");
    std::string fit_out = dir + "/fit_out";
    REQUIRE(loadtk_run_fit(fit_cfg.c_str(), fit_out.c_str()) == LOADTK_OK);
    CHECK(slurp(fit_out + "/model.json").find("\"coef\"") != std::string::npos);

    std::string tele_cfg = dir + "/tele.conf";
    write_file(tele_cfg,
               "synth.kind = telemetry\n"
               "synth.telemetry.start = 2020-03-01T00:00\n"
               "synth.telemetry.minutes = 2880\n");
    std::string tele_dir = dir + "/tele";
    REQUIRE(loadtk_run_synth(tele_cfg.c_str(), tele_dir.c_str(), 7) == LOADTK_OK);

    std::string cps_cfg = dir + "/cps.conf";
    write_file(cps_cfg, "data.telemetry_csv = " + tele_dir + "/telemetry.csv\n");
    std::string cps_out = dir + "/cps_out";
    REQUIRE(loadtk_run_cps1(cps_cfg.c_str(), cps_out.c_str()) == LOADTK_OK);
    CHECK(slurp(cps_out + "/cps1.json").find("\"cps1_pct\"") != std::string::npos);

    // failure modes: missing config, config without the needed window
    CHECK(loadtk_run_fit((dir + "/absent.conf").c_str(), fit_out.c_str()) ==
          LOADTK_ERR_VALIDATION);
    std::string incomplete = dir + "/incomplete.conf";
    write_file(incomplete, "data.load_csv = " + load_csv + "\n");
    CHECK(loadtk_run_fit(incomplete.c_str(), fit_out.c_str()) == LOADTK_ERR_VALIDATION);
    CHECK(std::string(loadtk_last_error()).find("fit.window") != std::string::npos);
    CHECK(loadtk_run_synth(nullptr, dir.c_str(), 1) == LOADTK_ERR_VALIDATION);
}
