#include "gmidas/estimate.hpp"

#include "gmidas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gmidas {

namespace {

constexpr double kClampProb = 1e-12;   // keeps logistic outputs strictly interior
constexpr double kClampLogExp = 40.0;  // bound on log(omega - 1)

double sigmoid(double x) {
    double v = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    return std::clamp(v, kClampProb, 1.0 - kClampProb);
}

double logit(double p) {
    p = std::clamp(p, kClampProb, 1.0 - kClampProb);
    return std::log(p / (1.0 - p));
}

double omega_from_log(double w) {
    return 1.0 + std::exp(std::clamp(w, -kClampLogExp, kClampLogExp));
}

double log_from_omega(double omega) {
    return std::clamp(std::log(std::max(omega - 1.0, 1e-300)), -kClampLogExp, kClampLogExp);
}

struct MomentSummary {
    double mean = 0.0;
    double var = 0.0;  // population variance
};

MomentSummary return_moments(const MixedPanel& panel) {
    MomentSummary ms;
    std::size_t n = 0;
    for (const auto& p : panel.periods) {
        for (double r : p.day_returns) {
            ms.mean += r;
            ++n;
        }
    }
    if (n == 0) return ms;
    ms.mean /= static_cast<double>(n);
    for (const auto& p : panel.periods) {
        for (double r : p.day_returns) {
            const double d = r - ms.mean;
            ms.var += d * d;
        }
    }
    ms.var /= static_cast<double>(n);
    return ms;
}

// OLS of each month's mean squared deviation on its flat-weighted lag average.
void seed_theta_m(const MixedPanel& panel, double mu0, double& theta0, double& m0) {
    const std::size_t n = panel.n_periods();
    std::vector<double> y(n), x(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto& p = panel.periods[t];
        double sum_sq = 0.0;
        for (double r : p.day_returns) {
            const double d = r - mu0;
            sum_sq += d * d;
        }
        y[t] = p.n_days() > 0 ? sum_sq / static_cast<double>(p.n_days()) : 0.0;
        auto lags = panel.lag_row(t);
        x[t] = std::accumulate(lags.begin(), lags.end(), 0.0) / static_cast<double>(lags.size());
    }
    const double x_bar = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double y_bar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sxx += (x[t] - x_bar) * (x[t] - x_bar);
        sxy += (x[t] - x_bar) * (y[t] - y_bar);
    }
    theta0 = sxx > 1e-300 ? sxy / sxx : 0.0;
    m0 = y_bar - theta0 * x_bar;
    if (!std::isfinite(theta0) || !std::isfinite(m0)) {
        theta0 = 0.0;
        m0 = y_bar;
    }
}

}  // namespace

std::vector<std::string> free_param_names(const TransformSpec& spec) {
    if (spec.fix_theta) return {"mu", "alpha", "beta", "m"};
    if (spec.fix_omega1) return {"mu", "alpha", "beta", "theta", "omega2", "m"};
    return {"mu", "alpha", "beta", "theta", "omega1", "omega2", "m"};
}

std::vector<double> free_param_values(const ParameterSet& p, const TransformSpec& spec) {
    if (spec.fix_theta) return {p.mu, p.alpha, p.beta, p.m};
    if (spec.fix_omega1) return {p.mu, p.alpha, p.beta, p.theta, p.omega2, p.m};
    return {p.mu, p.alpha, p.beta, p.theta, p.omega1, p.omega2, p.m};
}

ParameterSet with_free_params(const ParameterSet& base, std::span<const double> values,
                              const TransformSpec& spec) {
    ParameterSet p = base;
    std::size_t i = 0;
    p.mu = values[i++];
    p.alpha = values[i++];
    p.beta = values[i++];
    if (!spec.fix_theta) {
        p.theta = values[i++];
        if (!spec.fix_omega1) p.omega1 = values[i++];
        p.omega2 = values[i++];
    }
    p.m = values[i++];
    return p;
}

std::vector<double> to_unconstrained(const ParameterSet& p, const TransformSpec& spec) {
    const double persistence = p.alpha + p.beta;
    const double share = persistence > 0.0 ? p.beta / persistence : 0.5;

    std::vector<double> x;
    x.push_back(p.mu);
    x.push_back(logit(persistence));
    x.push_back(logit(share));
    if (!spec.fix_theta) {
        x.push_back(p.theta);
        if (!spec.fix_omega1) x.push_back(log_from_omega(p.omega1));
        x.push_back(log_from_omega(p.omega2));
    }
    x.push_back(p.m);
    return x;
}

ParameterSet from_unconstrained(std::span<const double> x, const TransformSpec& spec) {
    ParameterSet p;
    std::size_t i = 0;
    p.mu = x[i++];
    const double persistence = sigmoid(x[i++]);
    const double share = sigmoid(x[i++]);
    p.alpha = persistence * (1.0 - share);
    p.beta = persistence * share;
    if (spec.fix_theta) {
        p.theta = 0.0;
        p.omega1 = 1.0;
        p.omega2 = 1.0;
    } else {
        p.theta = x[i++];
        p.omega1 = spec.fix_omega1 ? 1.0 : omega_from_log(x[i++]);
        p.omega2 = omega_from_log(x[i++]);
    }
    p.m = x[i++];
    return p;
}

std::vector<ParameterSet> default_starts(const MixedPanel& panel, const TransformSpec& spec) {
    const MomentSummary ms = return_moments(panel);
    double theta0 = 0.0, m0 = ms.var;
    seed_theta_m(panel, ms.mean, theta0, m0);
    if (spec.fix_theta) theta0 = 0.0;

    static constexpr double kAlphaGrid[] = {0.05, 0.1, 0.2};
    static constexpr double kBetaGrid[] = {0.7, 0.85, 0.9};
    static constexpr double kOmegaGrid[] = {1.5, 3.0, 10.0};

    std::vector<ParameterSet> starts;
    for (double alpha : kAlphaGrid) {
        for (double beta : kBetaGrid) {
            if (alpha + beta >= 1.0) continue;
            if (spec.fix_theta) {
                starts.push_back({ms.mean, alpha, beta, 0.0, 1.0, 1.0, m0});
            } else {
                for (double omega2 : kOmegaGrid) {
                    starts.push_back({ms.mean, alpha, beta, theta0, 1.0, omega2, m0});
                }
            }
        }
    }
    // fallback: regressor switched off, variance at the sample level
    starts.push_back({ms.mean, 0.1, 0.85, 0.0, 1.0, spec.fix_theta ? 1.0 : 3.0, ms.var});
    return starts;
}

FitResult fit(const MixedPanel& panel, const FitOptions& options) {
    if (panel.periods.empty()) throw Error("fit: empty panel");
    const TransformSpec& spec = options.transform;

    const auto objective = [&](std::span<const double> x) -> double {
        for (double v : x) {
            if (!std::isfinite(v)) return -k_infeasible_log_lik;
        }
        return -log_likelihood(from_unconstrained(x, spec), panel, options.link);
    };

    // candidate starts, screened for feasibility
    std::vector<ParameterSet> starts;
    if (options.start) {
        starts.push_back(*options.start);
    } else {
        starts = default_starts(panel, spec);
    }

    struct Candidate {
        std::vector<double> x;
        double ll;
    };
    std::vector<Candidate> feasible;
    std::vector<double> start_lls;
    for (const auto& s : starts) {
        std::vector<double> x = to_unconstrained(s, spec);
        const double ll = -objective(x);
        if (ll > k_infeasible_log_lik) {
            feasible.push_back({std::move(x), ll});
            start_lls.push_back(ll);
        }
    }
    if (feasible.empty()) {
        throw NoFeasibleStart("every candidate start is infeasible (tau <= 0 somewhere)");
    }
    std::stable_sort(feasible.begin(), feasible.end(),
                     [](const Candidate& a, const Candidate& b) { return a.ll > b.ll; });
    const std::size_t n_runs =
        std::min<std::size_t>(feasible.size(), std::max(1, options.n_best_starts));

    const MomentSummary ms = return_moments(panel);
    const double sd = std::sqrt(std::max(ms.var, 1e-300));

    // steps in unconstrained coordinates
    const std::size_t dim = feasible.front().x.size();
    const auto steps_for = [&](std::span<const double> at, double scale) {
        std::vector<double> st(dim, 0.5 * scale);
        std::size_t i = 0;
        st[i++] = std::max(0.1 * sd, 1e-8) * scale;  // mu
        i += 2;                                      // persistence, share logits keep 0.5
        if (!spec.fix_theta) {
            const double theta_here = at[i];
            st[i++] = std::max(0.25 * std::abs(theta_here), 1e-4) * scale;  // theta
            if (!spec.fix_omega1) i += 1;
            i += 1;  // omega logs keep 0.5
        }
        const double m_here = at[i];
        st[i] = std::max({0.25 * std::abs(m_here), 1e-3 * ms.var, 1e-10}) * scale;  // m
        return st;
    };

    SimplexResult best{};
    best.f = std::numeric_limits<double>::infinity();
    int total_iterations = 0;

    for (std::size_t run = 0; run < n_runs; ++run) {
        const auto& cand = feasible[run];
        SimplexResult r = nelder_mead(objective, cand.x, steps_for(cand.x, 1.0), options.simplex);
        total_iterations += r.iterations;
        if (r.f < best.f) best = std::move(r);
    }

    // polish: restart a small simplex at the incumbent until it stalls
    for (int pass = 0; pass < options.polish_restarts; ++pass) {
        SimplexResult r =
            nelder_mead(objective, best.x, steps_for(best.x, 0.01), options.simplex);
        total_iterations += r.iterations;
        const double improvement = best.f - r.f;
        const bool stalled = improvement <= 1e-10 * std::max(1.0, std::abs(best.f));
        if (r.f <= best.f) {
            // the polish run starts at the incumbent, so appending its trace
            // keeps the best-seen likelihood non-decreasing across the history
            std::vector<double> combined = std::move(best.best_trace);
            combined.insert(combined.end(), r.best_trace.begin(), r.best_trace.end());
            best = std::move(r);
            best.best_trace = std::move(combined);
        }
        if (stalled) break;
    }

    FitResult result;
    result.params = from_unconstrained(best.x, spec);
    result.transform = spec;
    result.link = options.link;
    result.param_names = free_param_names(spec);
    result.n_free_params = spec.n_free();
    result.log_lik = -best.f;
    result.aic = aic(result.log_lik, result.n_free_params);
    result.n_obs = panel.n_days_total();
    result.converged = best.converged;
    result.n_iterations = total_iterations;
    result.regressor = panel.regressor_label;
    result.start_log_liks = std::move(start_lls);
    result.best_trace.reserve(best.best_trace.size());
    for (double f : best.best_trace) result.best_trace.push_back(-f);
    if (!panel.periods.empty()) {
        result.window_start = panel.periods.front().id;
        result.window_end = panel.periods.back().id;
    }

    if (!result.converged && options.strict) {
        throw NonConvergence("simplex search did not meet tolerances in " +
                             std::to_string(total_iterations) + " iterations");
    }

    const std::size_t n_free = result.param_names.size();
    result.std_errors.assign(n_free, std::numeric_limits<double>::quiet_NaN());
    result.t_stats.assign(n_free, std::numeric_limits<double>::quiet_NaN());
    if (options.compute_std_errors) {
        try {
            result.std_errors = standard_errors(result, panel);
            result.se_available = true;
            const std::vector<double> values = free_param_values(result.params, spec);
            for (std::size_t i = 0; i < n_free; ++i) {
                result.t_stats[i] = values[i] / result.std_errors[i];
            }
        } catch (const SingularHessian&) {
            result.se_available = false;
        }
    }
    return result;
}

Eigen::MatrixXd finite_difference_hessian(const ObjectiveFn& f, std::span<const double> x,
                                          std::span<const double> steps) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd h(n, n);
    std::vector<double> p(x.begin(), x.end());
    const double f0 = f(p);

    const auto eval = [&](std::initializer_list<std::pair<std::size_t, double>> shifts) {
        std::vector<double> q(x.begin(), x.end());
        for (auto [idx, delta] : shifts) q[idx] += delta;
        return f(q);
    };

    for (Eigen::Index i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(i);
        const double hi = steps[si];
        const double fp = eval({{si, hi}});
        const double fm = eval({{si, -hi}});
        h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            const double hj = steps[sj];
            const double fpp = eval({{si, hi}, {sj, hj}});
            const double fpm = eval({{si, hi}, {sj, -hj}});
            const double fmp = eval({{si, -hi}, {sj, hj}});
            const double fmm = eval({{si, -hi}, {sj, -hj}});
            h(i, j) = h(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }
    return h;
}

std::vector<double> standard_errors(const FitResult& fit, const MixedPanel& panel) {
    const TransformSpec& spec = fit.transform;
    const std::vector<double> values = free_param_values(fit.params, spec);
    const std::vector<std::string> names = free_param_names(spec);
    const std::size_t n = values.size();

    const MomentSummary ms = return_moments(panel);
    const double sd = std::sqrt(std::max(ms.var, 1e-300));

    // relative steps with parameter-specific floors
    std::vector<double> steps(n);
    for (std::size_t i = 0; i < n; ++i) {
        double floor = 0.01;
        if (names[i] == "mu") floor = 0.01 * sd;
        if (names[i] == "m") floor = std::max(0.01 * ms.var, 1e-12);
        if (names[i] == "theta") floor = 1e-6;
        steps[i] = 1e-3 * std::max(std::abs(values[i]), floor);
    }

    const auto ll_of = [&](std::span<const double> v) -> double {
        const ParameterSet p = with_free_params(fit.params, v, spec);
        if (!params_valid(p)) return k_infeasible_log_lik;
        return log_likelihood(p, panel, fit.link);
    };

    const Eigen::MatrixXd hessian = finite_difference_hessian(ll_of, values, steps);
    if (!hessian.allFinite() || hessian.cwiseAbs().maxCoeff() > 1e90) {
        throw SingularHessian("log-likelihood not finite within the differencing stencil");
    }

    // observed information = -Hessian; must be positive definite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(-hessian);
    if (solver.info() != Eigen::Success) {
        throw SingularHessian("eigendecomposition of the observed information failed");
    }
    const Eigen::VectorXd eigs = solver.eigenvalues();
    const double max_eig = eigs.maxCoeff();
    if (!(eigs.minCoeff() > 0.0) || !(eigs.minCoeff() > 1e-12 * std::max(max_eig, 1.0))) {
        throw SingularHessian("observed information is not positive definite");
    }

    const Eigen::MatrixXd inv = solver.eigenvectors() * eigs.cwiseInverse().asDiagonal() *
                                solver.eigenvectors().transpose();
    std::vector<double> se(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (!(v > 0.0)) throw SingularHessian("non-positive variance estimate");
        se[i] = std::sqrt(v);
    }
    return se;
}

}  // namespace gmidas
