#include "gmidas/csv.hpp"

#include "gmidas/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace gmidas::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// Strips CR (CRLF input) and a UTF-8 BOM on the first line.
void normalize_line(std::string& line, bool first) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF') {
        line.erase(0, 3);
    }
}

double parse_double_cell(const std::string& cell, const std::string& file, std::size_t line_no) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw MalformedRow(file, line_no, "cannot parse numeric value '" + cell + "'");
    }
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        normalize_line(line, first);
        first = false;
        lines.push_back(line);
    }
    return lines;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& file) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw MalformedRow(file, 1, "missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

DailySeries load_daily_series(const std::filesystem::path& path, SeriesKind kind,
                              const DailySchema& schema) {
    const std::string file = path.string();
    auto lines = read_lines(path);
    if (lines.empty()) throw MalformedRow(file, 1, "empty file, expected a header row");

    auto header = split_line(lines[0]);
    const std::size_t date_col = find_column(header, schema.date_column, file);
    const std::size_t value_col = find_column(header, schema.value_column, file);

    struct Row {
        Date date;
        double value;
    };
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto cells = split_line(lines[i]);
        if (cells.size() <= std::max(date_col, value_col)) {
            throw MalformedRow(file, line_no, "expected at least " +
                                                  std::to_string(std::max(date_col, value_col) + 1) +
                                                  " columns, got " + std::to_string(cells.size()));
        }
        Date d;
        try {
            d = parse_date(cells[date_col]);
        } catch (const Error& e) {
            throw MalformedRow(file, line_no, e.what());
        }
        rows.push_back({d, parse_double_cell(cells[value_col], file, line_no)});
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });

    DailySeries s;
    s.kind = kind;
    s.dates.reserve(rows.size());
    s.values.reserve(rows.size());
    for (const auto& r : rows) {
        s.dates.push_back(r.date);
        s.values.push_back(r.value);
    }
    validate(s);
    return s;
}

LowFrequencySeries load_monthly_series(const std::filesystem::path& path,
                                       const std::string& label) {
    const std::string file = path.string();
    auto lines = read_lines(path);
    if (lines.empty()) throw MalformedRow(file, 1, "empty file, expected a header row");

    auto header = split_line(lines[0]);
    const std::size_t month_col = find_column(header, "month", file);
    const std::size_t value_col = find_column(header, "value", file);

    struct Row {
        YearMonth month;
        double value;
    };
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto cells = split_line(lines[i]);
        if (cells.size() <= std::max(month_col, value_col)) {
            throw MalformedRow(file, line_no, "too few columns");
        }
        YearMonth ym;
        try {
            ym = parse_year_month(cells[month_col]);
        } catch (const Error& e) {
            throw MalformedRow(file, line_no, e.what());
        }
        rows.push_back({ym, parse_double_cell(cells[value_col], file, line_no)});
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.month < b.month; });

    LowFrequencySeries s;
    s.label = label.empty() ? path.stem().string() : label;
    for (const auto& r : rows) {
        s.months.push_back(r.month);
        s.values.push_back(r.value);
    }
    validate(s);
    return s;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void save_daily_series(const std::filesystem::path& path, const DailySeries& s) {
    std::string out = "date,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += to_string(s.dates[i]) + "," + format_double(s.values[i]) + "\n";
    }
    atomic_write_text(path, out);
}

void save_monthly_series(const std::filesystem::path& path, const LowFrequencySeries& s) {
    std::string out = "month,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += to_string(s.months[i]) + "," + format_double(s.values[i]) + "\n";
    }
    atomic_write_text(path, out);
}

WidePanel load_wide_monthly_csv(const std::filesystem::path& path) {
    const std::string file = path.string();
    auto lines = read_lines(path);
    if (lines.empty()) throw MalformedRow(file, 1, "empty file, expected a header row");

    auto header = split_line(lines[0]);
    if (header.size() < 2 || header[0] != "month") {
        throw MalformedRow(file, 1, "expected header 'month,COUNTRY1,...'");
    }

    WidePanel panel;
    panel.columns.assign(header.begin() + 1, header.end());

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        auto cells = split_line(lines[i]);
        if (cells.size() != header.size()) {
            throw MalformedRow(file, line_no, "expected " + std::to_string(header.size()) +
                                                  " columns, got " + std::to_string(cells.size()));
        }
        YearMonth ym;
        try {
            ym = parse_year_month(cells[0]);
        } catch (const Error& e) {
            throw MalformedRow(file, line_no, e.what());
        }
        std::vector<double> row;
        row.reserve(panel.columns.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            if (cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan") {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            } else {
                row.push_back(parse_double_cell(cell, file, line_no));
            }
        }
        panel.months.push_back(ym);
        panel.rows.push_back(std::move(row));
    }

    // sort rows by month
    std::vector<std::size_t> order(panel.months.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return panel.months[a] < panel.months[b];
    });
    WidePanel sorted;
    sorted.columns = panel.columns;
    for (std::size_t idx : order) {
        sorted.months.push_back(panel.months[idx]);
        sorted.rows.push_back(std::move(panel.rows[idx]));
    }
    return sorted;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    std::filesystem::path tmp =
        (dir.empty() ? std::filesystem::path(".") : dir) / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace gmidas::csv
