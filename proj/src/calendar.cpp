#include "gmidas/calendar.hpp"

#include "gmidas/errors.hpp"

#include <array>
#include <charconv>

namespace gmidas {

namespace {

constexpr std::array<int, 13> kDaysInMonth = {0, 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int parse_int(std::string_view s, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

bool is_valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    int max_day = kDaysInMonth[static_cast<std::size_t>(d.month)];
    if (d.month == 2 && is_leap(d.year)) max_day = 29;
    return d.day <= max_day;
}

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error("expected ISO-8601 date YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    Date d{parse_int(text.substr(0, 4), "year"), parse_int(text.substr(5, 2), "month"),
           parse_int(text.substr(8, 2), "day")};
    if (!is_valid_date(d)) {
        throw Error("invalid calendar date '" + std::string(text) + "'");
    }
    return d;
}

YearMonth parse_year_month(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') {
        throw Error("expected month YYYY-MM, got '" + std::string(text) + "'");
    }
    YearMonth ym{parse_int(text.substr(0, 4), "year"), parse_int(text.substr(5, 2), "month")};
    if (ym.month < 1 || ym.month > 12) {
        throw Error("invalid month '" + std::string(text) + "'");
    }
    return ym;
}

namespace {
std::string two_digits(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}
}  // namespace

std::string to_string(const Date& d) {
    return std::to_string(d.year) + "-" + two_digits(d.month) + "-" + two_digits(d.day);
}

std::string to_string(const YearMonth& ym) {
    return std::to_string(ym.year) + "-" + two_digits(ym.month);
}

YearMonth from_month_index(int index) {
    int year = index / 12;
    int month = index % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    return {year, month + 1};
}

}  // namespace gmidas
