#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace gmidas {

/// Calendar day (no time zone, no time of day).
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;
};

/// Calendar month, the low-frequency period of the model.
struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12

    auto operator<=>(const YearMonth&) const = default;

    /// Months since year 0; adjacent months differ by exactly 1.
    int index() const { return year * 12 + (month - 1); }
};

bool is_valid_date(const Date& d);

/// Parses "YYYY-MM-DD". Throws gmidas::Error on malformed input.
Date parse_date(std::string_view text);

/// Parses "YYYY-MM".
YearMonth parse_year_month(std::string_view text);

std::string to_string(const Date& d);
std::string to_string(const YearMonth& ym);

inline YearMonth year_month_of(const Date& d) { return {d.year, d.month}; }

YearMonth from_month_index(int index);

inline YearMonth add_months(const YearMonth& ym, int n) {
    return from_month_index(ym.index() + n);
}

}  // namespace gmidas
