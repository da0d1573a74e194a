#include "gmidas/series.hpp"

#include "gmidas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gmidas {

std::size_t MixedPanel::n_days_total() const {
    std::size_t n = 0;
    for (const auto& p : periods) n += p.n_days();
    return n;
}

void validate(const DailySeries& s) {
    if (s.dates.size() != s.values.size()) {
        throw Error("daily series: dates and values differ in length");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s.values[i])) {
            throw Error("daily series: non-finite value at " + to_string(s.dates[i]));
        }
        if (s.kind == SeriesKind::price && !(s.values[i] > 0.0)) {
            throw NonPositivePrice("non-positive price " + std::to_string(s.values[i]) + " at " +
                                   to_string(s.dates[i]));
        }
        if (i > 0) {
            if (s.dates[i] == s.dates[i - 1]) {
                throw DuplicateDate("duplicate date " + to_string(s.dates[i]));
            }
            if (s.dates[i] < s.dates[i - 1]) {
                throw Error("daily series: dates not increasing at " + to_string(s.dates[i]));
            }
        }
    }
    if (s.kind == SeriesKind::price && s.size() < 2) {
        throw TooFewObservations("price series needs at least 2 observations");
    }
}

void validate(const LowFrequencySeries& s) {
    if (s.months.size() != s.values.size()) {
        throw Error("monthly series: months and values differ in length");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s.values[i])) {
            throw Error("monthly series: non-finite value at " + to_string(s.months[i]));
        }
        if (i > 0 && s.months[i].index() != s.months[i - 1].index() + 1) {
            throw RegressorGap("monthly series gap between " + to_string(s.months[i - 1]) +
                               " and " + to_string(s.months[i]));
        }
    }
}

DailySeries compute_log_returns(const DailySeries& prices) {
    if (prices.kind != SeriesKind::price) {
        throw WrongKind("compute_log_returns expects a price series");
    }
    validate(prices);
    DailySeries out;
    out.kind = SeriesKind::log_return;
    out.dates.reserve(prices.size() - 1);
    out.values.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        out.dates.push_back(prices.dates[i]);
        out.values.push_back(std::log(prices.values[i]) - std::log(prices.values[i - 1]));
    }
    return out;
}

std::vector<Period> group_by_month(const DailySeries& returns) {
    if (returns.kind != SeriesKind::log_return) {
        throw WrongKind("group_by_month expects a return series");
    }
    std::vector<Period> periods;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        YearMonth ym = year_month_of(returns.dates[i]);
        if (periods.empty() || !(periods.back().id == ym)) {
            if (!periods.empty() && ym.index() != periods.back().id.index() + 1) {
                throw EmptyPeriod("no trading days in " +
                                  to_string(add_months(periods.back().id, 1)));
            }
            periods.push_back(Period{ym, {}, {}});
        }
        periods.back().day_dates.push_back(returns.dates[i]);
        periods.back().day_returns.push_back(returns.values[i]);
    }
    return periods;
}

LowFrequencySeries realized_volatility(const std::vector<Period>& periods) {
    LowFrequencySeries rv;
    rv.label = "rv";
    for (const auto& p : periods) {
        if (p.day_returns.empty()) {
            throw EmptyPeriod("no trading days in " + to_string(p.id));
        }
        double sum_sq = 0.0;
        for (double r : p.day_returns) sum_sq += r * r;
        rv.months.push_back(p.id);
        rv.values.push_back(sum_sq);
    }
    return rv;
}

LowFrequencySeries realized_volatility(const DailySeries& returns) {
    return realized_volatility(group_by_month(returns));
}

MixedPanel align_panel(const DailySeries& daily, const LowFrequencySeries& regressor, int n_lags) {
    if (n_lags < 1) throw InvalidConfig("n_lags must be >= 1");
    if (daily.empty()) throw Error("align_panel: empty daily series");
    if (regressor.empty()) throw RegressorGap("align_panel: empty regressor series");
    validate(regressor);

    std::vector<Period> periods = group_by_month(daily);

    const int reg_first = regressor.empty() ? 0 : regressor.months.front().index();
    const int reg_last = regressor.empty() ? -1 : regressor.months.back().index();

    // A month m is usable once regressor months m-K .. m-1 all exist.
    const int first_usable = reg_first + n_lags;

    MixedPanel panel;
    panel.regressor_label = regressor.label;
    panel.n_lags = n_lags;

    for (const auto& p : periods) {
        const int idx = p.id.index();
        if (idx < first_usable) {
            ++panel.n_excluded_leading;
            continue;
        }
        if (idx - 1 > reg_last) {
            throw RegressorGap("regressor '" + regressor.label + "' ends at " +
                               to_string(regressor.months.back()) + " but month " +
                               to_string(p.id) + " needs lags through " +
                               to_string(add_months(p.id, -1)));
        }
        panel.periods.push_back(p);
        for (int k = 1; k <= n_lags; ++k) {
            panel.lags.push_back(regressor.values[static_cast<std::size_t>(idx - k - reg_first)]);
        }
    }

    if (panel.periods.empty()) {
        std::string first_ok = to_string(from_month_index(first_usable));
        throw InsufficientLagHistory(
            "no month of the daily series has " + std::to_string(n_lags) +
                " regressor lags; first usable month would be " + first_ok,
            first_ok);
    }
    return panel;
}

DailySeries slice_months(const DailySeries& s, YearMonth first, YearMonth last) {
    DailySeries out;
    out.kind = s.kind;
    for (std::size_t i = 0; i < s.size(); ++i) {
        YearMonth ym = year_month_of(s.dates[i]);
        if (first <= ym && ym <= last) {
            out.dates.push_back(s.dates[i]);
            out.values.push_back(s.values[i]);
        }
    }
    return out;
}

MixedPanel slice_panel(const MixedPanel& panel, YearMonth first, YearMonth last) {
    MixedPanel out;
    out.regressor_label = panel.regressor_label;
    out.n_lags = panel.n_lags;
    out.n_excluded_leading = panel.n_excluded_leading;
    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        const YearMonth id = panel.periods[t].id;
        if (first <= id && id <= last) {
            out.periods.push_back(panel.periods[t]);
            auto row = panel.lag_row(t);
            out.lags.insert(out.lags.end(), row.begin(), row.end());
        }
    }
    return out;
}

std::vector<double> all_returns(const MixedPanel& panel) {
    std::vector<double> r;
    r.reserve(panel.n_days_total());
    for (const auto& p : panel.periods) {
        r.insert(r.end(), p.day_returns.begin(), p.day_returns.end());
    }
    return r;
}

}  // namespace gmidas
