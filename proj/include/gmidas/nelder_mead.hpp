#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gmidas {

struct SimplexOptions {
    int max_iterations = 5000;
    double f_tolerance = 1e-9;  // relative spread of f across the simplex
    double x_tolerance = 1e-7;  // max vertex distance from the best point
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> best_trace;  // best f after each iteration
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization (reflection / expansion / contraction
/// / shrink with the standard coefficients). Deterministic given (x0, steps).
SimplexResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                          std::span<const double> steps, const SimplexOptions& options = {});

}  // namespace gmidas
