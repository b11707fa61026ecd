#include "util/dates.hpp"

#include <chrono>
#include <cstdio>

namespace ilpg {

namespace {

using days_t = std::chrono::sys_days;

bool valid_ymd(int y, unsigned m, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    return ymd.ok();
}

int32_t to_days(int y, unsigned m, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    return static_cast<int32_t>(days_t{ymd}.time_since_epoch().count());
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

} // namespace

Date::Date(int year, unsigned month, unsigned day) : days_(to_days(year, month, day)) {}

std::optional<Date> Date::parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = s.substr(0, 4), m = s.substr(5, 2), d = s.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
    int yi = to_int(y), mi = to_int(m), di = to_int(d);
    if (!valid_ymd(yi, mi, di)) return std::nullopt;
    return Date{yi, static_cast<unsigned>(mi), static_cast<unsigned>(di)};
}

std::optional<Date> Date::parse_flexible(std::string_view s) {
    if (auto d = parse_iso(s)) return d;
    if (s.size() != 10 || s[2] != '/' || s[5] != '/') return std::nullopt;
    auto d = s.substr(0, 2), m = s.substr(3, 2), y = s.substr(6, 4);
    if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
    int yi = to_int(y), mi = to_int(m), di = to_int(d);
    if (!valid_ymd(yi, mi, di)) return std::nullopt;
    return Date{yi, static_cast<unsigned>(mi), static_cast<unsigned>(di)};
}

std::string Date::to_iso() const {
    std::chrono::year_month_day ymd{days_t{std::chrono::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int Date::year() const {
    std::chrono::year_month_day ymd{days_t{std::chrono::days{days_}}};
    return static_cast<int>(ymd.year());
}

} // namespace ilpg
