#pragma once

#include "gmidas/midas.hpp"
#include "gmidas/series.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace gmidas {

/// Full parameter vector of the mixed-frequency volatility model.
/// Constraints: alpha > 0, beta > 0, alpha + beta < 1, omega1/omega2 >= 1.
struct ParameterSet {
    double mu = 0.0;      // daily mean return
    double alpha = 0.05;  // shock loading
    double beta = 0.90;   // variance persistence
    double theta = 0.0;   // regressor slope in the long-run component
    double omega1 = 1.0;  // lag-weight shape (fixed at 1 by default)
    double omega2 = 1.0;  // lag-weight decay
    double m = 1.0;       // long-run intercept
};

bool params_valid(const ParameterSet& p);
void validate(const ParameterSet& p);

/// Unit-mean daily variance factor g, one value per day in panel order.
struct ShortRunPath {
    std::vector<double> g;
};

/// Total conditional variance sigma^2 = tau * g, one value per day.
struct VariancePath {
    std::vector<double> sigma2;
};

/// Daily GARCH(1,1) recursion around the month-level tau:
///
///   g_i = (1 - alpha - beta) + alpha * (r_{i-1} - mu)^2 / tau_{month(i)} + beta * g_{i-1}
///
/// run chronologically across month boundaries (the previous day of a month's
/// first day is the last day of the month before). The very first day has no
/// predecessor and takes g = 1, the unconditional mean of g.
ShortRunPath filter_short_run(const ParameterSet& params, const MixedPanel& panel,
                              const LongRunPath& tau);

/// Sentinel returned by log_likelihood at infeasible parameter points
/// (some tau_t <= 0). Finite so simplex arithmetic stays well-defined.
inline constexpr double k_infeasible_log_lik = -1e100;

/// Gaussian log-likelihood: sum over days of
///   -0.5 * [ln(2 pi) + ln(tau * g) + (r - mu)^2 / (tau * g)].
double log_likelihood(const ParameterSet& params, const MixedPanel& panel,
                      LongRunLink link = LongRunLink::level);

/// sigma^2_{i,t} = tau_t * g_{i,t}, composing the two components.
VariancePath conditional_variance_path(const ParameterSet& params, const MixedPanel& panel,
                                       LongRunLink link = LongRunLink::level);

/// Deterministic seeded standard-normal stream (Box-Muller over mt19937_64),
/// so simulated output is bit-identical for a given seed.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
    double operator()();

private:
    std::mt19937_64 rng_;
};

struct SimulationResult {
    DailySeries daily;  // kind = log_return
    MixedPanel panel;
};

/// Draws r_{i,t} = mu + sqrt(tau_t * g_{i,t}) * eps with eps ~ N(0,1).
/// Simulated months run from regressor.start + n_lags through regressor.end,
/// each given `days_per_month` trading days (dated 1..D within the month, so
/// days_per_month <= 28). Throws InfeasibleParams if any tau <= 0.
SimulationResult simulate(const ParameterSet& params, const LowFrequencySeries& regressor,
                          int days_per_month, int n_lags, std::uint64_t seed);

/// Stationary log-AR(1) regressor path for simulation studies:
///   ln X_t = (1-rho) ln(level) + rho ln X_{t-1} + sigma_ln * z_t.
LowFrequencySeries simulate_regressor_path(YearMonth start, int n_months, double level, double rho,
                                           double sigma_ln, std::uint64_t seed,
                                           const std::string& label = "sim");

}  // namespace gmidas
