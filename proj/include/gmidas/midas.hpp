#pragma once

#include "gmidas/series.hpp"

#include <span>
#include <vector>

namespace gmidas {

/// Beta-polynomial lag weights: nonnegative, summing to one.
struct WeightVector {
    std::vector<double> weights;
    double omega1 = 1.0;
    double omega2 = 1.0;

    std::size_t size() const { return weights.size(); }
};

/// Two-parameter Beta lag polynomial over k = 1..K:
///
///   phi_k  proportional to  (k/K)^(omega1-1) * (1 - k/K)^(omega2-1)
///
/// normalized to sum to one. With omega1 = 1 this is the one-parameter decay
/// scheme; omega1 = omega2 = 1 gives flat weights. 0^0 is taken as 1, so the
/// k = K weight is exactly zero whenever omega2 > 1 and exactly 1/K when
/// omega2 = 1. Shapes below 1 would put infinite mass at the endpoints and
/// are rejected.
WeightVector beta_weights(int n_lags, double omega1, double omega2);

/// Month-level long-run variance, constant within each month.
struct LongRunPath {
    std::vector<double> tau;  // one per panel period

    std::size_t size() const { return tau.size(); }
};

/// How the smoothed regressor maps into tau. The level link is the model
/// proper; the exponential link exp(m + theta * sum) is an optional variant
/// that keeps tau positive for any parameter values.
enum class LongRunLink { level, exponential };

/// tau_t = m + theta * sum_k phi_k * X_{t-k} (or its exponential under the
/// alternative link). Throws NonPositiveTau (with the offending period index)
/// if any tau fails to be positive.
LongRunPath long_run_component(double m, double theta, const WeightVector& weights,
                               const MixedPanel& panel,
                               LongRunLink link = LongRunLink::level);

/// Non-throwing variant for use inside likelihood evaluation: fills `out` and
/// returns false as soon as some tau_t <= 0.
bool try_long_run_component(double m, double theta, std::span<const double> weights,
                            const MixedPanel& panel, std::vector<double>& out,
                            LongRunLink link = LongRunLink::level);

}  // namespace gmidas
