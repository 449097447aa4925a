#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace loadtk {

// Proleptic Gregorian civil date. All calendar logic runs in one configured
// local civil time zone; the zone name is carried as metadata only.
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

bool is_valid_date(const CivilDate& d);
bool is_leap_year(int year);
int days_in_month(int year, int month);

// Days since 1970-01-01.
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days);

// Monday = 0 .. Sunday = 6.
int weekday_monday0(const CivilDate& d);

// Month arithmetic with day-of-month clamping (Jan 31 + 1 month -> Feb 28/29).
CivilDate add_months(const CivilDate& d, int months);
CivilDate add_days(const CivilDate& d, std::int64_t days);

// One civil hour.
struct Timestamp {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;  // 0..23

    auto operator<=>(const Timestamp&) const = default;

    CivilDate date() const { return {year, month, day}; }
    // Hours since 1970-01-01T00:00 on the civil hour grid.
    std::int64_t hour_index() const;
    static Timestamp from_hour_index(std::int64_t h);

    int weekday() const { return weekday_monday0(date()); }
    bool is_weekend() const {
        int w = weekday();
        return w == 5 || w == 6;
    }
};

bool is_valid_timestamp(const Timestamp& t);

struct CalendarConfig {
    std::vector<CivilDate> holidays;  // kept sorted and unique
    std::set<int> windchill_season_months{11, 12, 1, 2, 3, 4};
    std::set<int> heat_season_months{5, 6, 7, 8, 9, 10};
    std::string timezone = "America/Regina";

    // Throws ValidationError on overlapping seasons or invalid holiday dates.
    void validate() const;
    void set_holidays(std::vector<CivilDate> dates);
    bool is_holiday(const CivilDate& d) const;
};

struct CalendarFlags {
    int weekday = 0;  // Monday = 0
    bool weekend = false;
    std::optional<int> holiday_month;  // 1..12 when the date is a listed holiday
    bool windchill_season = false;
    bool heat_season = false;
};

CalendarFlags calendar_flags(const Timestamp& t, const CalendarConfig& cal);

// Text forms. Dates are YYYY-MM-DD; hour stamps are YYYY-MM-DDTHH:00.
std::optional<CivilDate> parse_date(std::string_view s);
std::optional<Timestamp> parse_hour_timestamp(std::string_view s);
// Minute stamps are YYYY-MM-DDTHH:MM[:SS]; returns the hour plus minute/second.
struct MinuteStamp {
    Timestamp hour;
    int minute = 0;
    int second = 0;
    std::int64_t minute_index() const { return hour.hour_index() * 60 + minute; }
};
std::optional<MinuteStamp> parse_minute_timestamp(std::string_view s);

std::string format_date(const CivilDate& d);
std::string format_hour(const Timestamp& t);

}  // namespace loadtk
