#pragma once

#include "gmidas/estimate.hpp"
#include "gmidas/series.hpp"

#include <optional>

namespace gmidas {

/// One-step-ahead variance predictions paired with their realized proxies.
/// The prediction for a day uses returns through the previous day and
/// regressor months through the previous month only.
struct ForecastSeries {
    std::vector<Date> dates;
    std::vector<double> predicted_variance;
    std::vector<double> actual_proxy;  // squared demeaned return

    std::size_t size() const { return dates.size(); }
    bool empty() const { return dates.empty(); }
};

enum class SampleTag { full_sample, out_of_sample };

struct LossReport {
    double rmse = 0.0;
    double rmsd = 0.0;
    double rmae = 0.0;
    double rmad = 0.0;
    SampleTag sample = SampleTag::full_sample;
    std::size_t T = 0;
};

struct MonthSpan {
    YearMonth first;
    YearMonth last;

    bool empty() const { return last < first; }
};

/// Fixed-parameter one-step-ahead forecasts for the days of `range`. The
/// short-run factor is filtered over the whole panel with realized returns;
/// no re-estimation happens. The range may start at the fit window itself
/// (a self-forecast reproduces the conditional variance path) but not before.
ForecastSeries forecast_one_step(const FitResult& fit, const MixedPanel& panel, MonthSpan range);

/// Root mean squared/absolute losses on variances and on their square roots,
///   RMSE = sqrt(mean((a - p)^2))     RMAE = sqrt(mean(|a - p|))
///   RMSD = sqrt(mean((sa - sp)^2))   RMAD = sqrt(mean(|sa - sp|))
/// where sa, sp are square roots of actual and predicted variance. The
/// absolute-error variants take the square root of the mean absolute error,
/// which is what the names RMAE/RMAD denote here.
LossReport evaluate(const ForecastSeries& fc, SampleTag sample = SampleTag::full_sample);

struct WindowConfig {
    YearMonth estimation_start;
    YearMonth estimation_end;
    YearMonth out_of_sample_start;  // start > end means no out-of-sample span
    YearMonth out_of_sample_end;
    int n_lags = 24;

    bool has_out_of_sample() const { return !(out_of_sample_end < out_of_sample_start); }
};

struct ProtocolResult {
    FitResult fit;
    ForecastSeries in_sample_forecasts;
    ForecastSeries oos_forecasts;
    LossReport in_sample;
    std::optional<LossReport> out_of_sample;
    int excluded_periods = 0;
};

/// Estimation-window fit, fixed-parameter out-of-sample forecasting, and
/// loss evaluation over both spans.
ProtocolResult run_protocol(const DailySeries& daily, const LowFrequencySeries& regressor,
                            const WindowConfig& window, const FitOptions& options = {});

}  // namespace gmidas
