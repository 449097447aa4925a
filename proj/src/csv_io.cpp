#include "csv_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace loadtk {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

class CsvReader {
public:
    CsvReader(const std::string& path, const std::vector<std::string>& required_header,
              std::size_t optional_tail = 0)
        : path_(path), in_(path) {
        if (!in_) throw DataError("cannot open " + path);
        std::string line;
        bool have_header = false;
        while (std::getline(in_, line)) {
            ++line_no_;
            line = strip_cr(line);
            if (line.empty() || line[0] == '#') continue;
            header_ = split_fields(line);
            have_header = true;
            break;
        }
        if (!have_header) throw ValidationError(path + ": missing header row");

        std::size_t want = required_header.size();
        if (header_.size() < want || header_.size() > want + optional_tail)
            throw ValidationError(path + ": expected " + join(required_header) +
                                  " header, found " + join(header_));
        for (std::size_t i = 0; i < want; ++i)
            if (header_[i] != required_header[i])
                throw ValidationError(path + ": header column " + std::to_string(i + 1) +
                                      " must be '" + required_header[i] + "', found '" +
                                      header_[i] + "'");
        columns_ = header_.size();
    }

    std::size_t columns() const { return columns_; }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            line = strip_cr(line);
            if (line.empty() || line[0] == '#') continue;
            fields = split_fields(line);
            if (fields.size() != columns_)
                throw DataError(where() + ": expected " + std::to_string(columns_) +
                                " fields, found " + std::to_string(fields.size()));
            return true;
        }
        return false;
    }

    std::string where() const { return path_ + ":" + std::to_string(line_no_); }

    double number(const std::string& field, const char* what) const {
        double v = 0;
        const char* b = field.data();
        const char* e = b + field.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e)
            throw DataError(where() + ": cannot parse " + std::string(what) + " '" + field + "'");
        if (!(v == v))
            throw DataError(where() + ": " + std::string(what) + " is not a number");
        return v;
    }

    Timestamp hour(const std::string& field) const {
        auto ts = parse_hour_timestamp(field);
        if (!ts) throw DataError(where() + ": bad hourly timestamp '" + field + "'");
        return *ts;
    }

    CivilDate date(const std::string& field) const {
        auto d = parse_date(field);
        if (!d) throw DataError(where() + ": bad date '" + field + "'");
        return *d;
    }

    MinuteStamp minute(const std::string& field) const {
        auto m = parse_minute_timestamp(field);
        if (!m) throw DataError(where() + ": bad minute timestamp '" + field + "'");
        return *m;
    }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += v[i];
        }
        return out;
    }

    std::string path_;
    std::ifstream in_;
    std::vector<std::string> header_;
    std::size_t columns_ = 0;
    std::size_t line_no_ = 0;
};

std::vector<std::pair<Timestamp, double>> read_stamped_values(const std::string& path,
                                                              const char* value_column) {
    CsvReader r(path, {"timestamp", value_column});
    std::vector<std::pair<Timestamp, double>> out;
    std::vector<std::string> f;
    while (r.next(f)) out.emplace_back(r.hour(f[0]), r.number(f[1], value_column));
    return out;
}

}  // namespace

std::vector<std::pair<Timestamp, double>> read_load_csv(const std::string& path) {
    return read_stamped_values(path, "load_mw");
}

std::vector<std::pair<Timestamp, double>> read_forecast_csv(const std::string& path) {
    return read_stamped_values(path, "forecast_mw");
}

std::vector<WeatherRecord> read_weather_csv(const std::string& path) {
    CsvReader r(path,
                {"timestamp", "temp_c", "wind_kmh", "rh_pct", "daily_max_c", "daily_min_c"});
    std::vector<WeatherRecord> out;
    std::vector<std::string> f;
    while (r.next(f)) {
        WeatherRecord rec;
        rec.timestamp = r.hour(f[0]);
        rec.temp_c = r.number(f[1], "temp_c");
        rec.wind_speed_kmh = r.number(f[2], "wind_kmh");
        rec.rel_humidity_pct = r.number(f[3], "rh_pct");
        rec.daily_max_c = r.number(f[4], "daily_max_c");
        rec.daily_min_c = r.number(f[5], "daily_min_c");
        if (rec.wind_speed_kmh < 0)
            throw DataError(r.where() + ": wind speed is negative");
        if (rec.rel_humidity_pct < 0 || rec.rel_humidity_pct > 100)
            throw DataError(r.where() + ": relative humidity outside 0..100");
        out.push_back(rec);
    }
    return out;
}

std::vector<CivilDate> read_holiday_csv(const std::string& path) {
    CsvReader r(path, {"date"});
    std::vector<CivilDate> out;
    std::vector<std::string> f;
    while (r.next(f)) out.push_back(r.date(f[0]));
    return out;
}

std::vector<TelemetryRow> read_telemetry_csv(const std::string& path) {
    CsvReader r(path, {"timestamp", "ni_actual_mw", "ni_scheduled_mw", "freq_hz"}, 1);
    bool has_sched = r.columns() == 5;
    std::vector<TelemetryRow> out;
    std::vector<std::string> f;
    while (r.next(f)) {
        TelemetryRow row;
        row.stamp = r.minute(f[0]);
        row.ni_actual_mw = r.number(f[1], "ni_actual_mw");
        row.ni_scheduled_mw = r.number(f[2], "ni_scheduled_mw");
        row.freq_hz = r.number(f[3], "freq_hz");
        row.freq_sched_hz = has_sched ? r.number(f[4], "freq_sched_hz") : 60.0;
        out.push_back(row);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw DataError("cannot format number");
    return std::string(buf, p);
}

std::string format_minute(std::int64_t minute_index) {
    std::int64_t hour = minute_index >= 0 ? minute_index / 60 : (minute_index - 59) / 60;
    int minute = static_cast<int>(minute_index - hour * 60);
    Timestamp t = Timestamp::from_hour_index(hour);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", t.year, t.month, t.day, t.hour,
                  minute);
    return buf;
}

namespace {

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& comments,
              const std::string& header)
        : path_(path), out_(path, std::ios::trunc) {
        if (!out_) throw DataError("cannot write " + path);
        for (const auto& c : comments) out_ << "# " << c << "\n";
        out_ << header << "\n";
    }
    std::ofstream& stream() { return out_; }
    void close() {
        out_.close();
        if (!out_) throw DataError("failed writing " + path_);
    }

private:
    std::string path_;
    std::ofstream out_;
};

}  // namespace

void write_load_csv(const std::string& path,
                    const std::vector<std::pair<Timestamp, double>>& rows,
                    const std::vector<std::string>& comments) {
    CsvWriter w(path, comments, "timestamp,load_mw");
    for (const auto& [ts, v] : rows) w.stream() << format_hour(ts) << "," << format_double(v) << "\n";
    w.close();
}

void write_weather_csv(const std::string& path, const std::vector<WeatherRecord>& rows,
                       const std::vector<std::string>& comments) {
    CsvWriter w(path, comments, "timestamp,temp_c,wind_kmh,rh_pct,daily_max_c,daily_min_c");
    for (const auto& r : rows)
        w.stream() << format_hour(r.timestamp) << "," << format_double(r.temp_c) << ","
                   << format_double(r.wind_speed_kmh) << "," << format_double(r.rel_humidity_pct)
                   << "," << format_double(r.daily_max_c) << "," << format_double(r.daily_min_c)
                   << "\n";
    w.close();
}

void write_holiday_csv(const std::string& path, const std::vector<CivilDate>& dates,
                       const std::vector<std::string>& comments) {
    CsvWriter w(path, comments, "date");
    for (const auto& d : dates) w.stream() << format_date(d) << "\n";
    w.close();
}

void write_telemetry_csv(const std::string& path, const std::vector<MinuteSample>& rows,
                         const std::vector<std::string>& comments) {
    CsvWriter w(path, comments, "timestamp,ni_actual_mw,ni_scheduled_mw,freq_hz,freq_sched_hz");
    for (const auto& r : rows)
        w.stream() << format_minute(r.minute) << "," << format_double(r.ni_actual_mw) << ","
                   << format_double(r.ni_scheduled_mw) << "," << format_double(r.freq_hz) << ","
                   << format_double(r.freq_sched_hz) << "\n";
    w.close();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write " + path);
    out << content;
    out.close();
    if (!out) throw DataError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace loadtk
