#include "gmidas/midas.hpp"

#include "gmidas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmidas {

WeightVector beta_weights(int n_lags, double omega1, double omega2) {
    if (n_lags < 1) throw InvalidShape("beta_weights: n_lags must be >= 1");
    if (!(omega1 >= 1.0) || !(omega2 >= 1.0)) {
        throw InvalidShape("beta_weights: shape parameters must be >= 1 (got omega1=" +
                           std::to_string(omega1) + ", omega2=" + std::to_string(omega2) + ")");
    }

    WeightVector wv;
    wv.omega1 = omega1;
    wv.omega2 = omega2;
    wv.weights.resize(static_cast<std::size_t>(n_lags));

    // With a single lag the normalization forces the whole mass onto it for
    // every shape (the unnormalized term is 0 for omega2 > 1, but the limit
    // of the normalized scheme is the only distribution on one point).
    if (n_lags == 1) {
        wv.weights[0] = 1.0;
        return wv;
    }

    // Accumulate in log space so extreme shapes concentrate mass instead of
    // underflowing every term. An exponent of exactly 0 contributes nothing,
    // which realizes the 0^0 = 1 convention at k = K.
    const double K = static_cast<double>(n_lags);
    const double a = omega1 - 1.0;
    const double b = omega2 - 1.0;
    constexpr double minus_inf = -std::numeric_limits<double>::infinity();

    std::vector<double> log_w(static_cast<std::size_t>(n_lags));
    double log_max = minus_inf;
    for (int k = 1; k <= n_lags; ++k) {
        const double x = static_cast<double>(k) / K;
        double lw = 0.0;
        if (a != 0.0) lw += a * std::log(x);
        if (b != 0.0) lw += (x < 1.0) ? b * std::log(1.0 - x) : minus_inf;
        log_w[static_cast<std::size_t>(k - 1)] = lw;
        log_max = std::max(log_max, lw);
    }
    if (!(log_max > minus_inf)) {
        throw InvalidShape("beta_weights: degenerate weights (all zero)");
    }

    double sum = 0.0;
    for (std::size_t k = 0; k < log_w.size(); ++k) {
        const double w = std::exp(log_w[k] - log_max);
        wv.weights[k] = w;
        sum += w;
    }
    for (double& w : wv.weights) w /= sum;
    return wv;
}

namespace {

inline double apply_link(double value, LongRunLink link) {
    return link == LongRunLink::exponential ? std::exp(value) : value;
}

}  // namespace

bool try_long_run_component(double m, double theta, std::span<const double> weights,
                            const MixedPanel& panel, std::vector<double>& out,
                            LongRunLink link) {
    const std::size_t n = panel.n_periods();
    out.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        auto lags = panel.lag_row(t);
        double smoothed = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) smoothed += weights[k] * lags[k];
        const double tau = apply_link(m + theta * smoothed, link);
        if (!(tau > 0.0) || !std::isfinite(tau)) return false;
        out[t] = tau;
    }
    return true;
}

LongRunPath long_run_component(double m, double theta, const WeightVector& weights,
                               const MixedPanel& panel, LongRunLink link) {
    if (static_cast<int>(weights.size()) != panel.n_lags) {
        throw Error("long_run_component: weight length " + std::to_string(weights.size()) +
                    " != panel n_lags " + std::to_string(panel.n_lags));
    }
    LongRunPath path;
    path.tau.resize(panel.n_periods());
    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        auto lags = panel.lag_row(t);
        double smoothed = 0.0;
        for (std::size_t k = 0; k < weights.weights.size(); ++k) {
            smoothed += weights.weights[k] * lags[k];
        }
        const double tau = apply_link(m + theta * smoothed, link);
        if (!(tau > 0.0) || !std::isfinite(tau)) {
            throw NonPositiveTau("tau = " + std::to_string(tau) + " in period " +
                                     to_string(panel.periods[t].id),
                                 t);
        }
        path.tau[t] = tau;
    }
    return path;
}

}  // namespace gmidas
