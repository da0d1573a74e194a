#include "gmidas/forecast.hpp"

#include "gmidas/errors.hpp"

#include <cmath>

namespace gmidas {

ForecastSeries forecast_one_step(const FitResult& fit, const MixedPanel& panel, MonthSpan range) {
    if (panel.periods.empty()) throw Error("forecast_one_step: empty panel");
    if (fit.window_start && range.first < *fit.window_start) {
        throw RangeBeforeFitWindow("forecast range starts " + to_string(range.first) +
                                   ", before the fit window " + to_string(*fit.window_start));
    }

    ForecastSeries fc;
    if (range.empty()) return fc;

    if (range.first < panel.periods.front().id || panel.periods.back().id < range.last) {
        throw InsufficientLagHistory(
            "forecast range " + to_string(range.first) + ".." + to_string(range.last) +
                " not covered by the aligned panel (" + to_string(panel.periods.front().id) +
                ".." + to_string(panel.periods.back().id) + ")",
            to_string(panel.periods.front().id));
    }

    // one filtered pass over the full panel; tau is known one month ahead and
    // g_{i+1} is measurable at the end of day i, so every sigma^2 below is a
    // legitimate one-step-ahead prediction
    const ParameterSet& p = fit.params;
    const WeightVector weights = beta_weights(panel.n_lags, p.omega1, p.omega2);
    const LongRunPath tau = long_run_component(p.m, p.theta, weights, panel, fit.link);
    const ShortRunPath g = filter_short_run(p, panel, tau);

    std::size_t day = 0;
    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        const Period& period = panel.periods[t];
        const bool in_range = !(period.id < range.first) && !(range.last < period.id);
        for (std::size_t i = 0; i < period.n_days(); ++i, ++day) {
            if (!in_range) continue;
            const double dev = period.day_returns[i] - p.mu;
            fc.dates.push_back(period.day_dates[i]);
            fc.predicted_variance.push_back(tau.tau[t] * g.g[day]);
            fc.actual_proxy.push_back(dev * dev);
        }
    }
    return fc;
}

LossReport evaluate(const ForecastSeries& fc, SampleTag sample) {
    if (fc.empty()) throw EmptySeries("evaluate: empty forecast series");

    double se = 0.0, ae = 0.0, sd = 0.0, ad = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const double diff = fc.actual_proxy[i] - fc.predicted_variance[i];
        se += diff * diff;
        ae += std::abs(diff);
        const double sdev = std::sqrt(fc.actual_proxy[i]) - std::sqrt(fc.predicted_variance[i]);
        sd += sdev * sdev;
        ad += std::abs(sdev);
    }
    const double T = static_cast<double>(fc.size());

    LossReport report;
    report.rmse = std::sqrt(se / T);
    report.rmae = std::sqrt(ae / T);
    report.rmsd = std::sqrt(sd / T);
    report.rmad = std::sqrt(ad / T);
    report.sample = sample;
    report.T = fc.size();
    return report;
}

ProtocolResult run_protocol(const DailySeries& daily, const LowFrequencySeries& regressor,
                            const WindowConfig& window, const FitOptions& options) {
    if (window.estimation_end < window.estimation_start) {
        throw InvalidConfig("estimation window ends before it starts");
    }
    if (window.has_out_of_sample() &&
        !(window.estimation_end < window.out_of_sample_start)) {
        throw RangeBeforeFitWindow("out-of-sample span must start after the estimation window");
    }

    const YearMonth last_month =
        window.has_out_of_sample() ? window.out_of_sample_end : window.estimation_end;
    const DailySeries windowed = slice_months(daily, window.estimation_start, last_month);
    if (windowed.empty()) {
        throw Error("run_protocol: no daily observations inside the configured windows");
    }

    const MixedPanel panel = align_panel(windowed, regressor, window.n_lags);
    if (panel.periods.front().id != year_month_of(windowed.dates.front())) {
        throw InsufficientLagHistory(
            "regressor history too short for the estimation window start",
            to_string(panel.periods.front().id));
    }

    const MixedPanel estimation_panel =
        slice_panel(panel, window.estimation_start, window.estimation_end);
    if (estimation_panel.periods.empty()) {
        throw Error("run_protocol: estimation window contains no data");
    }

    ProtocolResult result;
    result.excluded_periods = panel.n_excluded_leading;
    result.fit = gmidas::fit(estimation_panel, options);

    result.in_sample_forecasts = forecast_one_step(
        result.fit, estimation_panel, {window.estimation_start, window.estimation_end});
    result.in_sample = evaluate(result.in_sample_forecasts, SampleTag::full_sample);

    if (window.has_out_of_sample()) {
        result.oos_forecasts = forecast_one_step(
            result.fit, panel, {window.out_of_sample_start, window.out_of_sample_end});
        result.out_of_sample = evaluate(result.oos_forecasts, SampleTag::out_of_sample);
    }
    return result;
}

}  // namespace gmidas
