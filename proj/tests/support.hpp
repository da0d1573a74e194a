// Shared builders for the test suites.
#pragma once

#include "gmidas/model.hpp"
#include "gmidas/series.hpp"

#include <string>
#include <vector>

namespace support {

inline gmidas::LowFrequencySeries make_monthly(gmidas::YearMonth start,
                                               const std::vector<double>& values,
                                               const std::string& label = "x") {
    gmidas::LowFrequencySeries s;
    s.label = label;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.months.push_back(gmidas::add_months(start, static_cast<int>(i)));
        s.values.push_back(values[i]);
    }
    return s;
}

inline gmidas::MixedPanel panel_from_returns(const std::vector<std::vector<double>>& month_returns,
                                             const std::vector<std::vector<double>>& lag_rows,
                                             gmidas::YearMonth start = {2010, 1}) {
    gmidas::MixedPanel panel;
    panel.regressor_label = "x";
    panel.n_lags = static_cast<int>(lag_rows.front().size());
    for (std::size_t t = 0; t < month_returns.size(); ++t) {
        gmidas::Period p;
        p.id = gmidas::add_months(start, static_cast<int>(t));
        for (std::size_t i = 0; i < month_returns[t].size(); ++i) {
            p.day_dates.push_back({p.id.year, p.id.month, static_cast<int>(i) + 1});
            p.day_returns.push_back(month_returns[t][i]);
        }
        panel.periods.push_back(std::move(p));
        panel.lags.insert(panel.lags.end(), lag_rows[t].begin(), lag_rows[t].end());
    }
    return panel;
}

// Simulated dataset at the given parameters over a stochastic regressor,
// returned as an aligned panel (plus the inputs for callers that need them).
struct SimulatedData {
    gmidas::DailySeries daily;
    gmidas::LowFrequencySeries regressor;
    gmidas::MixedPanel panel;
};

inline SimulatedData simulate_dataset(const gmidas::ParameterSet& params, int n_months,
                                      int days_per_month, int n_lags, std::uint64_t seed,
                                      double reg_level = 0.1, double reg_rho = 0.85,
                                      double reg_sigma = 0.5) {
    SimulatedData data;
    data.regressor = gmidas::simulate_regressor_path(
        gmidas::add_months({2010, 1}, -n_lags), n_months + n_lags, reg_level, reg_rho, reg_sigma,
        seed ^ 0x9e3779b97f4a7c15ULL, "sim");
    auto sim = gmidas::simulate(params, data.regressor, days_per_month, n_lags, seed);
    data.daily = std::move(sim.daily);
    data.panel = std::move(sim.panel);
    return data;
}

// Operating point with realistic persistence, used across the simulation studies.
inline gmidas::ParameterSet reference_params() {
    gmidas::ParameterSet p;
    p.mu = 0.0006;
    p.alpha = 0.1221;
    p.beta = 0.8608;
    p.theta = 0.1855;
    p.omega1 = 1.0;
    p.omega2 = 2.8589;
    p.m = 0.0184;
    return p;
}

}  // namespace support
