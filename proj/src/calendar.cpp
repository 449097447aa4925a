#include "calendar.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "errors.hpp"

namespace loadtk {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

bool is_valid_date(const CivilDate& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(const CivilDate& d) {
    std::int64_t y = d.year;
    y -= d.month <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    return {static_cast<int>(y + (month <= 2)), month, day};
}

int weekday_monday0(const CivilDate& d) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    std::int64_t days = days_from_civil(d);
    return static_cast<int>(((days + 3) % 7 + 7) % 7);
}

CivilDate add_months(const CivilDate& d, int months) {
    int linear = d.year * 12 + (d.month - 1) + months;
    int year = linear / 12;
    int month = linear % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    month += 1;
    int day = std::min(d.day, days_in_month(year, month));
    return {year, month, day};
}

CivilDate add_days(const CivilDate& d, std::int64_t days) {
    return civil_from_days(days_from_civil(d) + days);
}

std::int64_t Timestamp::hour_index() const {
    return days_from_civil(date()) * 24 + hour;
}

Timestamp Timestamp::from_hour_index(std::int64_t h) {
    std::int64_t days = h >= 0 ? h / 24 : (h - 23) / 24;
    int hour = static_cast<int>(h - days * 24);
    CivilDate d = civil_from_days(days);
    return {d.year, d.month, d.day, hour};
}

bool is_valid_timestamp(const Timestamp& t) {
    return is_valid_date(t.date()) && t.hour >= 0 && t.hour <= 23;
}

void CalendarConfig::validate() const {
    for (int m : windchill_season_months) {
        if (m < 1 || m > 12) throw ValidationError("windchill season month out of range: " + std::to_string(m));
        if (heat_season_months.count(m))
            throw ValidationError("windchill and heat seasons overlap in month " + std::to_string(m));
    }
    for (int m : heat_season_months) {
        if (m < 1 || m > 12) throw ValidationError("heat season month out of range: " + std::to_string(m));
    }
    for (const CivilDate& d : holidays) {
        if (!is_valid_date(d)) throw ValidationError("invalid holiday date " + format_date(d));
    }
}

void CalendarConfig::set_holidays(std::vector<CivilDate> dates) {
    std::sort(dates.begin(), dates.end());
    dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
    holidays = std::move(dates);
}

bool CalendarConfig::is_holiday(const CivilDate& d) const {
    return std::binary_search(holidays.begin(), holidays.end(), d);
}

CalendarFlags calendar_flags(const Timestamp& t, const CalendarConfig& cal) {
    CalendarFlags f;
    f.weekday = t.weekday();
    f.weekend = t.is_weekend();
    if (cal.is_holiday(t.date())) f.holiday_month = t.month;
    f.windchill_season = cal.windchill_season_months.count(t.month) > 0;
    f.heat_season = cal.heat_season_months.count(t.month) > 0;
    return f;
}

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<CivilDate> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    CivilDate d;
    if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
        !parse_int(s.substr(8, 2), d.day))
        return std::nullopt;
    if (!is_valid_date(d)) return std::nullopt;
    return d;
}

std::optional<Timestamp> parse_hour_timestamp(std::string_view s) {
    auto m = parse_minute_timestamp(s);
    if (!m || m->minute != 0 || m->second != 0) return std::nullopt;
    return m->hour;
}

std::optional<MinuteStamp> parse_minute_timestamp(std::string_view s) {
    if (s.size() < 16 || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
    auto date = parse_date(s.substr(0, 10));
    if (!date) return std::nullopt;
    MinuteStamp out;
    int hour = 0;
    if (!parse_int(s.substr(11, 2), hour) || s[13] != ':' || !parse_int(s.substr(14, 2), out.minute))
        return std::nullopt;
    if (s.size() == 19) {
        if (s[16] != ':' || !parse_int(s.substr(17, 2), out.second)) return std::nullopt;
    } else if (s.size() != 16) {
        return std::nullopt;
    }
    if (hour < 0 || hour > 23 || out.minute < 0 || out.minute > 59 || out.second < 0 || out.second > 59)
        return std::nullopt;
    out.hour = {date->year, date->month, date->day, hour};
    return out;
}

std::string format_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::string format_hour(const Timestamp& t) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00", t.year, t.month, t.day, t.hour);
    return buf;
}

}  // namespace loadtk
