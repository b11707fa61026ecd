#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ilpg {

// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
  public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    static Date from_days(int32_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    // YYYY-MM-DD only.
    static std::optional<Date> parse_iso(std::string_view s);
    // YYYY-MM-DD or DD/MM/YYYY; rejects everything else.
    static std::optional<Date> parse_flexible(std::string_view s);

    std::string to_iso() const;
    int year() const;

    int32_t days() const { return days_; }

    friend Date operator+(Date d, int days) { return from_days(d.days_ + days); }
    friend int operator-(Date a, Date b) { return a.days_ - b.days_; }
    auto operator<=>(const Date&) const = default;

  private:
    int32_t days_ = 0;
};

} // namespace ilpg
