#include "gmidas/model.hpp"

#include "gmidas/errors.hpp"

#include <cmath>
#include <numbers>

namespace gmidas {

bool params_valid(const ParameterSet& p) {
    return std::isfinite(p.mu) && std::isfinite(p.theta) && std::isfinite(p.m) &&
           p.alpha > 0.0 && p.beta > 0.0 && p.alpha + p.beta < 1.0 && p.omega1 >= 1.0 &&
           p.omega2 >= 1.0;
}

void validate(const ParameterSet& p) {
    if (!params_valid(p)) {
        throw InvalidParams("parameter constraints violated: need alpha > 0, beta > 0, "
                            "alpha + beta < 1, omega1 >= 1, omega2 >= 1");
    }
}

ShortRunPath filter_short_run(const ParameterSet& params, const MixedPanel& panel,
                              const LongRunPath& tau) {
    validate(params);
    if (tau.size() != panel.n_periods()) {
        throw Error("filter_short_run: tau length != panel periods");
    }
    for (std::size_t t = 0; t < tau.size(); ++t) {
        if (!(tau.tau[t] > 0.0)) {
            throw NonPositiveTau("tau <= 0 in period " + to_string(panel.periods[t].id), t);
        }
    }

    ShortRunPath path;
    path.g.resize(panel.n_days_total());

    const double intercept = 1.0 - params.alpha - params.beta;
    double g_prev = 1.0;
    double r_prev = 0.0;
    bool has_prev = false;
    std::size_t day = 0;

    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        const double tau_t = tau.tau[t];
        for (double r : panel.periods[t].day_returns) {
            double g;
            if (!has_prev) {
                g = 1.0;  // unconditional mean of g
                has_prev = true;
            } else {
                const double shock = r_prev - params.mu;
                g = intercept + params.alpha * shock * shock / tau_t + params.beta * g_prev;
            }
            path.g[day++] = g;
            g_prev = g;
            r_prev = r;
        }
    }
    return path;
}

double log_likelihood(const ParameterSet& params, const MixedPanel& panel, LongRunLink link) {
    validate(params);

    const WeightVector weights = beta_weights(panel.n_lags, params.omega1, params.omega2);
    std::vector<double> tau;
    if (!try_long_run_component(params.m, params.theta, weights.weights, panel, tau, link)) {
        return k_infeasible_log_lik;
    }

    constexpr double ln_2pi = 1.8378770664093453;  // ln(2*pi)
    const double intercept = 1.0 - params.alpha - params.beta;

    double ll = 0.0;
    double g_prev = 1.0;
    double r_prev = 0.0;
    bool has_prev = false;

    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        const double tau_t = tau[t];
        for (double r : panel.periods[t].day_returns) {
            double g;
            if (!has_prev) {
                g = 1.0;
                has_prev = true;
            } else {
                const double shock = r_prev - params.mu;
                g = intercept + params.alpha * shock * shock / tau_t + params.beta * g_prev;
            }
            const double var = tau_t * g;
            const double dev = r - params.mu;
            ll -= 0.5 * (ln_2pi + std::log(var) + dev * dev / var);
            g_prev = g;
            r_prev = r;
        }
    }
    if (!std::isfinite(ll)) return k_infeasible_log_lik;
    return ll;
}

VariancePath conditional_variance_path(const ParameterSet& params, const MixedPanel& panel,
                                       LongRunLink link) {
    const WeightVector weights = beta_weights(panel.n_lags, params.omega1, params.omega2);
    const LongRunPath tau = long_run_component(params.m, params.theta, weights, panel, link);
    const ShortRunPath g = filter_short_run(params, panel, tau);

    VariancePath path;
    path.sigma2.resize(g.g.size());
    std::size_t day = 0;
    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        for (std::size_t i = 0; i < panel.periods[t].n_days(); ++i, ++day) {
            path.sigma2[day] = tau.tau[t] * g.g[day];
        }
    }
    return path;
}

double NormalSampler::operator()() {
    // Box-Muller; 2 uniforms per draw keeps the stream stateless.
    const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SimulationResult simulate(const ParameterSet& params, const LowFrequencySeries& regressor,
                          int days_per_month, int n_lags, std::uint64_t seed) {
    validate(params);
    validate(regressor);
    if (days_per_month < 1 || days_per_month > 28) {
        throw InvalidConfig("days_per_month must be in 1..28 so day numbers stay valid");
    }
    if (static_cast<int>(regressor.size()) <= n_lags) {
        throw InsufficientLagHistory("regressor too short to seed " + std::to_string(n_lags) +
                                         " lags",
                                     to_string(add_months(regressor.months.front(), n_lags)));
    }

    const WeightVector weights = beta_weights(n_lags, params.omega1, params.omega2);
    const int n_months = static_cast<int>(regressor.size()) - n_lags;
    const YearMonth first = add_months(regressor.months.front(), n_lags);

    // tau per simulated month, straight from the regressor lags
    std::vector<double> tau(static_cast<std::size_t>(n_months));
    for (int t = 0; t < n_months; ++t) {
        double smoothed = 0.0;
        for (int k = 1; k <= n_lags; ++k) {
            smoothed += weights.weights[static_cast<std::size_t>(k - 1)] *
                        regressor.values[static_cast<std::size_t>(n_lags + t - k)];
        }
        tau[static_cast<std::size_t>(t)] = params.m + params.theta * smoothed;
        if (!(tau[static_cast<std::size_t>(t)] > 0.0)) {
            throw InfeasibleParams("simulate: tau <= 0 in month " +
                                   to_string(add_months(first, t)));
        }
    }

    NormalSampler normal(seed);
    DailySeries daily;
    daily.kind = SeriesKind::log_return;
    daily.dates.reserve(static_cast<std::size_t>(n_months) * days_per_month);
    daily.values.reserve(daily.dates.capacity());

    const double intercept = 1.0 - params.alpha - params.beta;
    double g_prev = 1.0;
    double r_prev = 0.0;
    bool has_prev = false;

    for (int t = 0; t < n_months; ++t) {
        const YearMonth ym = add_months(first, t);
        const double tau_t = tau[static_cast<std::size_t>(t)];
        for (int d = 1; d <= days_per_month; ++d) {
            double g;
            if (!has_prev) {
                g = 1.0;
                has_prev = true;
            } else {
                const double shock = r_prev - params.mu;
                g = intercept + params.alpha * shock * shock / tau_t + params.beta * g_prev;
            }
            const double r = params.mu + std::sqrt(tau_t * g) * normal();
            daily.dates.push_back({ym.year, ym.month, d});
            daily.values.push_back(r);
            g_prev = g;
            r_prev = r;
        }
    }

    SimulationResult result;
    result.panel = align_panel(daily, regressor, n_lags);
    result.daily = std::move(daily);
    return result;
}

LowFrequencySeries simulate_regressor_path(YearMonth start, int n_months, double level, double rho,
                                           double sigma_ln, std::uint64_t seed,
                                           const std::string& label) {
    if (n_months < 1) throw InvalidConfig("n_months must be >= 1");
    if (!(level > 0.0)) throw InvalidConfig("regressor level must be positive");
    if (!(rho > -1.0 && rho < 1.0)) throw InvalidConfig("rho must lie in (-1, 1)");

    NormalSampler normal(seed);
    LowFrequencySeries s;
    s.label = label;
    s.months.reserve(static_cast<std::size_t>(n_months));
    s.values.reserve(static_cast<std::size_t>(n_months));

    const double ln_level = std::log(level);
    double ln_x = ln_level + sigma_ln / std::sqrt(1.0 - rho * rho) * normal();
    for (int t = 0; t < n_months; ++t) {
        s.months.push_back(add_months(start, t));
        s.values.push_back(std::exp(ln_x));
        ln_x = (1.0 - rho) * ln_level + rho * ln_x + sigma_ln * normal();
    }
    return s;
}

}  // namespace gmidas
