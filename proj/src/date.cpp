#include "citecorr/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace citecorr {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

int to_int(std::string_view s)
{
    int v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

std::optional<Date> make(int y, int m, int d)
{
    using namespace std::chrono;
    if (m < 1 || m > 12 || d < 1 || d > 31)
        return std::nullopt;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return Date(sys_days{ymd});
}

} // namespace

Date Date::from_ymd(int y, unsigned m, unsigned d)
{
    auto date = make(y, static_cast<int>(m), static_cast<int>(d));
    if (!date)
        throw std::invalid_argument("invalid calendar date");
    return *date;
}

std::optional<Date> Date::parse_compact(std::string_view text)
{
    if (text.size() != 8 || !all_digits(text))
        return std::nullopt;
    return make(to_int(text.substr(0, 4)), to_int(text.substr(4, 2)), to_int(text.substr(6, 2)));
}

std::optional<Date> Date::parse_iso(std::string_view text)
{
    if (text.size() < 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    if (text.size() > 10 && text[10] != 'T' && text[10] != ' ')
        return std::nullopt;
    auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(d))
        return std::nullopt;
    return make(to_int(y), to_int(m), to_int(d));
}

int Date::year() const
{
    return static_cast<int>(std::chrono::year_month_day{days_}.year());
}

unsigned Date::month() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.month());
}

unsigned Date::day() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.day());
}

int Date::yyyymmdd() const
{
    return year() * 10000 + static_cast<int>(month()) * 100 + static_cast<int>(day());
}

std::string Date::compact() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d%02u%02u", year(), month(), day());
    return buf;
}

std::string Date::iso() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

std::optional<YearMonth> YearMonth::parse(std::string_view text)
{
    std::string_view y, m;
    if (text.size() == 7 && text[4] == '-') {
        y = text.substr(0, 4);
        m = text.substr(5, 2);
    } else if (text.size() == 6) {
        y = text.substr(0, 4);
        m = text.substr(4, 2);
    } else {
        return std::nullopt;
    }
    if (!all_digits(y) || !all_digits(m))
        return std::nullopt;
    int month = to_int(m);
    if (month < 1 || month > 12)
        return std::nullopt;
    return YearMonth{to_int(y), static_cast<unsigned>(month)};
}

YearMonth YearMonth::previous() const
{
    return month == 1 ? YearMonth{year - 1, 12} : YearMonth{year, month - 1};
}

YearMonth YearMonth::next() const
{
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

std::string YearMonth::str() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
    return buf;
}

std::optional<int> parse_date_bound(std::string_view text)
{
    if (text.size() != 8 || !all_digits(text))
        return std::nullopt;
    int month = to_int(text.substr(4, 2));
    int day = to_int(text.substr(6, 2));
    if (month > 12 || day > 31)
        return std::nullopt;
    return to_int(text);
}

} // namespace citecorr
