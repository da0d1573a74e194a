#pragma once

#include "gmidas/series.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gmidas::csv {

/// Column names expected in a daily CSV. Defaults match the on-disk format
/// `date,value`; override to ingest files with other headers.
struct DailySchema {
    std::string date_column = "date";
    std::string value_column = "value";
};

/// Loads `date,value` rows (ISO-8601 dates), sorts by date, validates.
/// Malformed rows are reported with their 1-based line number.
DailySeries load_daily_series(const std::filesystem::path& path, SeriesKind kind,
                              const DailySchema& schema = {});

/// Loads `month,value` rows (months as YYYY-MM).
LowFrequencySeries load_monthly_series(const std::filesystem::path& path,
                                       const std::string& label = "");

void save_daily_series(const std::filesystem::path& path, const DailySeries& s);
void save_monthly_series(const std::filesystem::path& path, const LowFrequencySeries& s);

/// Wide monthly panel `month,C1,C2,...`; empty cells and NA/NaN mark missing.
struct WidePanel {
    std::vector<YearMonth> months;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // NaN = missing
};

WidePanel load_wide_monthly_csv(const std::filesystem::path& path);

/// Writes via a temp file in the same directory, then renames.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v);

}  // namespace gmidas::csv
