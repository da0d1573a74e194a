#pragma once

#include "gmidas/calendar.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gmidas {

enum class SeriesKind { price, log_return };

/// Dated daily observations, the high-frequency leg of the model.
/// Invariants: dates strictly increasing, values finite, prices positive.
struct DailySeries {
    std::vector<Date> dates;
    std::vector<double> values;
    SeriesKind kind = SeriesKind::price;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
};

/// Monthly observations (realized volatility, an uncertainty index, or any
/// user-supplied regressor). Months are consecutive: no gaps.
struct LowFrequencySeries {
    std::vector<YearMonth> months;
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
};

/// One calendar month of daily returns.
struct Period {
    YearMonth id;
    std::vector<Date> day_dates;
    std::vector<double> day_returns;

    std::size_t n_days() const { return day_returns.size(); }
};

/// Daily returns grouped into months, each month paired with the K regressor
/// values for the months strictly before it (lag k=1 is the most recent).
struct MixedPanel {
    std::vector<Period> periods;
    std::string regressor_label;
    int n_lags = 0;
    std::vector<double> lags;  // periods.size() x n_lags, row-major
    int n_excluded_leading = 0;

    std::span<const double> lag_row(std::size_t period_idx) const {
        return {lags.data() + period_idx * static_cast<std::size_t>(n_lags),
                static_cast<std::size_t>(n_lags)};
    }

    std::size_t n_periods() const { return periods.size(); }
    std::size_t n_days_total() const;
};

void validate(const DailySeries& s);
void validate(const LowFrequencySeries& s);

/// value_i = ln(p_i) - ln(p_{i-1}); result dated at the later day of each pair.
DailySeries compute_log_returns(const DailySeries& prices);

/// Groups a return series by calendar month. A missing month strictly between
/// the first and last observed month raises EmptyPeriod.
std::vector<Period> group_by_month(const DailySeries& returns);

/// RV_t = sum of squared daily returns within month t.
LowFrequencySeries realized_volatility(const std::vector<Period>& periods);
LowFrequencySeries realized_volatility(const DailySeries& returns);

/// Builds the mixed-frequency panel: months of `daily` paired with the K
/// regressor values immediately preceding each month. Leading months without
/// full lag history are dropped and counted in n_excluded_leading.
MixedPanel align_panel(const DailySeries& daily, const LowFrequencySeries& regressor, int n_lags);

/// Observations of `s` falling in months [first, last] inclusive.
DailySeries slice_months(const DailySeries& s, YearMonth first, YearMonth last);

/// Panel restricted to periods in [first, last]; lag rows are carried over.
MixedPanel slice_panel(const MixedPanel& panel, YearMonth first, YearMonth last);

/// Flattens the panel's returns in chronological order.
std::vector<double> all_returns(const MixedPanel& panel);

}  // namespace gmidas
