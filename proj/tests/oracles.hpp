// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#pragma once

#include "gmidas/nelder_mead.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

// Plain GARCH(1,1) with mean mu and intercept omega, written directly on the
// variance recursion sigma2_i = omega + alpha (r_{i-1}-mu)^2 + beta sigma2_{i-1},
// started at the unconditional variance omega / (1 - alpha - beta).
struct PlainGarchParams {
    double mu = 0.0;
    double omega = 1.0;
    double alpha = 0.05;
    double beta = 0.90;
};

inline double plain_garch_log_lik(const PlainGarchParams& p, std::span<const double> r) {
    if (!(p.omega > 0.0) || !(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.alpha + p.beta < 1.0)) {
        return -1e100;
    }
    const double ln_2pi = std::log(2.0 * std::numbers::pi);
    double sigma2 = p.omega / (1.0 - p.alpha - p.beta);
    double ll = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) {
            const double shock = r[i - 1] - p.mu;
            sigma2 = p.omega + p.alpha * shock * shock + p.beta * sigma2;
        }
        const double dev = r[i] - p.mu;
        ll -= 0.5 * (ln_2pi + std::log(sigma2) + dev * dev / sigma2);
    }
    return ll;
}

// Maximum-likelihood fit of the plain model; its own parameterization
// (log omega, logistic persistence/share), optimized by the generic simplex.
inline PlainGarchParams fit_plain_garch(std::span<const double> r) {
    const auto logistic = [](double x) {
        return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    };
    const auto unpack = [&](std::span<const double> x) {
        PlainGarchParams p;
        p.mu = x[0];
        p.omega = std::exp(x[1]);
        const double u = logistic(x[2]);
        const double v = logistic(x[3]);
        p.alpha = u * (1.0 - v);
        p.beta = u * v;
        return p;
    };
    const auto objective = [&](std::span<const double> x) {
        return -plain_garch_log_lik(unpack(x), r);
    };

    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    var /= static_cast<double>(r.size());

    const double u0 = 0.95, v0 = 0.85;
    std::vector<double> x0{mean, std::log(var * (1.0 - u0)), std::log(u0 / (1.0 - u0)),
                           std::log(v0 / (1.0 - v0))};
    std::vector<double> steps{0.1 * std::sqrt(var), 0.5, 0.5, 0.5};

    gmidas::SimplexOptions opts;
    opts.max_iterations = 8000;
    auto res = gmidas::nelder_mead(objective, x0, steps, opts);
    for (int pass = 0; pass < 3; ++pass) {
        std::vector<double> small_steps;
        for (double s : steps) small_steps.push_back(s * 0.01);
        auto polished = gmidas::nelder_mead(objective, res.x, small_steps, opts);
        if (polished.f >= res.f - 1e-12 * std::max(1.0, std::abs(res.f))) {
            res = polished;
            break;
        }
        res = polished;
    }
    return unpack(res.x);
}

// Closed-form short-run path when every return equals mu:
// g_i = (1-alpha-beta) (1-beta^{i-1}) / (1-beta) + beta^{i-1} g_1.
inline std::vector<double> constant_return_g_path(double alpha, double beta, double g1,
                                                  std::size_t n_days) {
    std::vector<double> g(n_days);
    for (std::size_t i = 0; i < n_days; ++i) {
        const double b_pow = std::pow(beta, static_cast<double>(i));
        g[i] = (1.0 - alpha - beta) * (1.0 - b_pow) / (1.0 - beta) + b_pow * g1;
    }
    return g;
}

}  // namespace oracle
