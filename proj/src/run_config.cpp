#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "csv_io.hpp"
#include "errors.hpp"

namespace loadtk {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& v, const std::string& where) {
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ValidationError(where + ": '" + v + "' is not a number");
    return out;
}

std::int64_t parse_int(const std::string& v, const std::string& where) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ValidationError(where + ": '" + v + "' is not an integer");
    return out;
}

DateWindow parse_window(const std::string& v, const std::string& where) {
    std::size_t sep = v.find("..");
    if (sep == std::string::npos)
        throw ValidationError(where + ": window must be YYYY-MM-DD..YYYY-MM-DD");
    auto from = parse_date(trim(v.substr(0, sep)));
    auto to = parse_date(trim(v.substr(sep + 2)));
    if (!from || !to)
        throw ValidationError(where + ": window must be YYYY-MM-DD..YYYY-MM-DD");
    if (!(*from < *to)) throw ValidationError(where + ": window end must fall after its start");
    return DateWindow{*from, *to};
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const DataError& e) {
        throw ValidationError(e.what());
    }
    return parse_text(text, path);
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        std::string where = origin + ":" + std::to_string(line_no);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(where + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError(where + ": empty key");
        if (value.empty()) throw ValidationError(where + ": empty value for '" + key + "'");
        if (cfg.entries_.count(key))
            throw ValidationError(where + ": key '" + key + "' appears twice");
        cfg.entries_[key] = value;

        if (key == "data.load_csv") {
            cfg.load_csv = value;
        } else if (key == "data.weather_csv") {
            cfg.weather_csv = value;
        } else if (key == "data.holiday_csv") {
            cfg.holiday_csv = value;
        } else if (key == "data.forecast_csv") {
            cfg.forecast_csv = value;
        } else if (key == "data.baseline_forecast_csv") {
            cfg.baseline_forecast_csv = value;
        } else if (key == "data.telemetry_csv") {
            cfg.telemetry_csv = value;
        } else if (key == "model.lambda_policy") {
            try {
                cfg.solver = parse_lambda_policy(value);
            } catch (const ValidationError& e) {
                throw ValidationError(where + ": " + e.what());
            }
        } else if (key == "model.train_months") {
            cfg.schedule.train_months = static_cast<int>(parse_int(value, where));
            if (cfg.schedule.train_months <= 0)
                throw ValidationError(where + ": train_months must be positive");
        } else if (key == "model.refresh_days") {
            cfg.schedule.refresh_days = static_cast<int>(parse_int(value, where));
            if (cfg.schedule.refresh_days <= 0)
                throw ValidationError(where + ": refresh_days must be positive");
        } else if (key == "fit.window") {
            cfg.fit_window = parse_window(value, where);
        } else if (key == "report.window") {
            cfg.report_window = parse_window(value, where);
        } else if (key == "forecast.window") {
            cfg.forecast_window = parse_window(value, where);
        } else if (key.rfind("scenario.", 0) == 0) {
            std::string label = key.substr(9);
            if (label.empty()) throw ValidationError(where + ": scenario needs a label");
            cfg.scenarios.emplace_back(label, parse_window(value, where));
        } else if (key == "gate.reference") {
            cfg.gate_reference = value;
        } else if (key == "gate.k") {
            cfg.gate_k = parse_number(value, where);
            if (cfg.gate_k <= 0) throw ValidationError(where + ": gate.k must be positive");
        } else if (key == "cps1.bias_mw_per_tenth_hz") {
            cfg.ba.bias_mw_per_tenth_hz = parse_number(value, where);
        } else if (key == "cps1.epsilon1_hz") {
            cfg.ba.epsilon1_hz = parse_number(value, where);
        } else if (key == "cps1.baseline_pct") {
            cfg.cps1_baseline_pct = parse_number(value, where);
        } else if (key == "synth.kind") {
            if (value != "load" && value != "telemetry")
                throw ValidationError(where + ": synth.kind must be load or telemetry");
            cfg.synth_kind = value;
        } else if (key == "synth.model") {
            if (value != "seasonal" && value != "flat_month")
                throw ValidationError(where + ": synth.model must be seasonal or flat_month");
            cfg.synth_model = value;
        } else if (key == "synth.window") {
            cfg.synth_window = parse_window(value, where);
        } else if (key == "synth.level_mw") {
            cfg.synth_level_mw = parse_number(value, where);
        } else if (key == "synth.noise_sigma_mw") {
            cfg.synth_noise_sigma_mw = parse_number(value, where);
            if (cfg.synth_noise_sigma_mw < 0)
                throw ValidationError(where + ": noise sigma must be non-negative");
        } else if (key == "synth.suppress.window") {
            cfg.synth_suppress_window = parse_window(value, where);
        } else if (key == "synth.suppress.fraction") {
            cfg.synth_suppress_fraction = parse_number(value, where);
            if (cfg.synth_suppress_fraction < 0 || cfg.synth_suppress_fraction >= 1)
                throw ValidationError(where + ": suppression fraction must lie in [0, 1)");
        } else if (key == "synth.telemetry.start") {
            auto ts = parse_hour_timestamp(value);
            if (!ts) throw ValidationError(where + ": start must be YYYY-MM-DDTHH:00");
            cfg.telemetry_start = *ts;
        } else if (key == "synth.telemetry.minutes") {
            cfg.telemetry_minutes = parse_int(value, where);
            if (cfg.telemetry_minutes <= 0)
                throw ValidationError(where + ": telemetry length must be positive");
        } else if (key == "synth.telemetry.freq_sigma_hz") {
            cfg.telemetry_freq_sigma_hz = parse_number(value, where);
        } else if (key == "synth.telemetry.race_noise_mw") {
            cfg.telemetry_race_noise_mw = parse_number(value, where);
        } else if (key == "synth.telemetry.race_freq_gain") {
            cfg.telemetry_race_freq_gain = parse_number(value, where);
        } else if (key == "synth.telemetry.insane_every") {
            cfg.telemetry_insane_every = parse_int(value, where);
            if (cfg.telemetry_insane_every < 0)
                throw ValidationError(where + ": insane_every must be non-negative");
        } else {
            throw ValidationError(where + ": unknown key '" + key + "'");
        }
    }

    // cross-key checks that need the whole file
    std::vector<std::string> labels;
    for (const auto& [label, _] : cfg.scenarios) labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw ValidationError(origin + ": scenario labels must be unique");
    if (cfg.gate_reference) {
        bool found = false;
        for (const auto& [label, _] : cfg.scenarios)
            if (label == *cfg.gate_reference) found = true;
        if (!found)
            throw ValidationError(origin + ": gate.reference '" + *cfg.gate_reference +
                                  "' names no declared scenario");
    }
    if (cfg.synth_suppress_window && cfg.synth_suppress_fraction == 0)
        throw ValidationError(origin + ": suppression window given without a fraction");
    return cfg;
}

std::uint64_t RunConfig::config_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto absorb = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : entries_) {  // std::map iterates sorted
        absorb(k);
        absorb("=");
        absorb(v);
        absorb("\n");
    }
    return h;
}

std::string RunConfig::config_hash_hex() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash()));
    return buf;
}

const DateWindow& RunConfig::require_window(const std::optional<DateWindow>& w,
                                            const char* key) const {
    if (!w) throw ValidationError(std::string("config is missing ") + key);
    return *w;
}

const std::string& RunConfig::require_path(const std::optional<std::string>& p,
                                           const char* key) const {
    if (!p) throw ValidationError(std::string("config is missing ") + key);
    return *p;
}

}  // namespace loadtk
