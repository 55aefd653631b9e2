#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace citecorr {

/// Calendar day in UTC. Day granularity is all the pipeline ever needs:
/// downloads are deduplicated per day and latencies are whole days.
class Date {
public:
    constexpr Date() = default;
    explicit constexpr Date(std::chrono::sys_days days) : days_(days) {}

    /// Throws std::invalid_argument for dates that do not exist.
    static Date from_ymd(int year, unsigned month, unsigned day);
    static constexpr Date from_days_since_epoch(std::int64_t n)
    {
        return Date(std::chrono::sys_days(std::chrono::days(n)));
    }

    /// "YYYYMMDD"
    static std::optional<Date> parse_compact(std::string_view text);
    /// "YYYY-MM-DD", optionally followed by a time part ("T..." or " ...").
    static std::optional<Date> parse_iso(std::string_view text);

    std::string compact() const;
    std::string iso() const;

    int year() const;
    unsigned month() const;
    unsigned day() const;
    /// The date as the integer YYYYMMDD; used for the range filters,
    /// which accept loose bounds such as 19000000.
    int yyyymmdd() const;

    constexpr std::int64_t days_since_epoch() const { return days_.time_since_epoch().count(); }
    constexpr std::chrono::sys_days sys_days() const { return days_; }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
    friend constexpr bool operator==(const Date&, const Date&) = default;

    /// Signed whole days from `b` to `a`.
    friend constexpr std::int64_t operator-(const Date& a, const Date& b)
    {
        return a.days_since_epoch() - b.days_since_epoch();
    }
    friend constexpr Date operator+(const Date& d, std::int64_t n)
    {
        return from_days_since_epoch(d.days_since_epoch() + n);
    }

private:
    std::chrono::sys_days days_{};
};

/// A (year, month) pair, ordered chronologically.
struct YearMonth {
    int year = 1970;
    unsigned month = 1;

    static std::optional<YearMonth> parse(std::string_view text); // "YYYY-MM" or "YYYYMM"
    static YearMonth of(const Date& d) { return {d.year(), d.month()}; }

    YearMonth previous() const;
    YearMonth next() const;
    bool contains(const Date& d) const { return d.year() == year && d.month() == month; }
    std::string str() const; // "YYYY-MM"

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

/// Validates an 8-digit YYYYMMDD filter bound. Month and day may be 00 so
/// that open-ended bounds like 19000000 stay expressible.
std::optional<int> parse_date_bound(std::string_view text);

} // namespace citecorr
