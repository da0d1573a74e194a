#pragma once

#include "gmidas/model.hpp"
#include "gmidas/nelder_mead.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace gmidas {

/// Which parameters are held fixed during estimation. omega1 is pinned to 1
/// by default (one-parameter lag decay); fixing theta at 0 drops omega2 too,
/// collapsing the model to a plain GARCH(1,1) with constant variance m.
struct TransformSpec {
    bool fix_omega1 = true;
    bool fix_theta = false;

    int n_free() const { return fix_theta ? 4 : (fix_omega1 ? 6 : 7); }
};

/// Maps the constrained parameters onto an unconstrained vector:
/// persistence and share through logits, lag shapes through log(omega - 1);
/// mu, theta, m pass through unchanged.
std::vector<double> to_unconstrained(const ParameterSet& p, const TransformSpec& spec);
ParameterSet from_unconstrained(std::span<const double> x, const TransformSpec& spec);

std::vector<std::string> free_param_names(const TransformSpec& spec);
std::vector<double> free_param_values(const ParameterSet& p, const TransformSpec& spec);
ParameterSet with_free_params(const ParameterSet& base, std::span<const double> values,
                              const TransformSpec& spec);

struct FitOptions {
    TransformSpec transform;
    LongRunLink link = LongRunLink::level;
    std::optional<ParameterSet> start;  // overrides the multi-start grid
    SimplexOptions simplex;             // per-run simplex settings
    int n_best_starts = 3;              // starts kept (by initial likelihood) for full runs
    int polish_restarts = 2;            // small-simplex restarts at the incumbent
    bool strict = false;                // throw NonConvergence instead of flagging
    bool compute_std_errors = true;
};

struct FitResult {
    ParameterSet params;
    std::vector<std::string> param_names;  // free parameters, report order
    std::vector<double> std_errors;        // aligned with param_names; NaN if unavailable
    std::vector<double> t_stats;
    bool se_available = false;
    double log_lik = 0.0;
    double aic = 0.0;
    std::size_t n_obs = 0;
    bool converged = false;
    int n_iterations = 0;
    int n_free_params = 0;
    std::string regressor;
    TransformSpec transform;
    LongRunLink link = LongRunLink::level;
    std::optional<YearMonth> window_start;  // estimation window, when known
    std::optional<YearMonth> window_end;
    std::vector<double> start_log_liks;  // likelihood at each feasible start
    std::vector<double> best_trace;      // best log-likelihood per iteration
};

inline double aic(double log_lik, int k) { return 2.0 * k - 2.0 * log_lik; }

/// The multi-start grid: a small lattice over (alpha, beta, omega2) with
/// theta and m seeded by regressing each month's mean squared return on the
/// flat-weighted lag average.
std::vector<ParameterSet> default_starts(const MixedPanel& panel, const TransformSpec& spec);

/// Maximum-likelihood fit via simplex search from the best starts, followed
/// by small-simplex polish passes. Deterministic given (panel, options).
FitResult fit(const MixedPanel& panel, const FitOptions& options = {});

/// Central-difference Hessian with per-coordinate steps.
Eigen::MatrixXd finite_difference_hessian(const ObjectiveFn& f, std::span<const double> x,
                                          std::span<const double> steps);

/// Standard errors from the observed information: square roots of the
/// diagonal of the inverse negative log-likelihood Hessian, differenced in
/// the original parameter space. Throws SingularHessian when the Hessian is
/// not negative definite.
std::vector<double> standard_errors(const FitResult& fit, const MixedPanel& panel);

}  // namespace gmidas
