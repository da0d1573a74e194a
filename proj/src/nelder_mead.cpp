#include "gmidas/nelder_mead.hpp"

#include "gmidas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmidas {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

SimplexResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                          std::span<const double> steps, const SimplexOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) throw Error("nelder_mead: empty starting point");
    if (steps.size() != n) throw Error("nelder_mead: steps size mismatch");

    // initial simplex: x0 plus one vertex per coordinate step
    std::vector<std::vector<double>> verts(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i) {
        verts[i + 1][i] += (steps[i] != 0.0) ? steps[i] : 1e-4;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    SimplexResult result;
    result.best_trace.reserve(static_cast<std::size_t>(options.max_iterations));

    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        result.best_trace.push_back(fv[best]);

        // convergence: relative f spread and simplex extent around the best vertex
        const double f_spread = std::abs(fv[worst] - fv[best]);
        const double f_scale = std::max(1.0, std::abs(fv[best]));
        double x_extent = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                x_extent = std::max(x_extent, std::abs(verts[i][j] - verts[best][j]));
            }
        }
        if (f_spread <= options.f_tolerance * f_scale && x_extent <= options.x_tolerance) {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += verts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j) {
            xr[j] = centroid[j] + kReflect * (centroid[j] - verts[worst][j]);
        }
        const double fr = f(xr);

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j) {
                xe[j] = centroid[j] + kExpand * (xr[j] - centroid[j]);
            }
            const double fe = f(xe);
            if (fe < fr) {
                verts[worst] = xe;
                fv[worst] = fe;
            } else {
                verts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            verts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const auto& anchor = outside ? xr : verts[worst];
            for (std::size_t j = 0; j < n; ++j) {
                xc[j] = centroid[j] + kContract * (anchor[j] - centroid[j]);
            }
            const double fc = f(xc);
            if (fc < (outside ? fr : fv[worst])) {
                verts[worst] = xc;
                fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        verts[i][j] = verts[best][j] + kShrink * (verts[i][j] - verts[best][j]);
                    }
                    fv[i] = f(verts[i]);
                }
            }
        }
    }

    sort_order();
    result.x = verts[order[0]];
    result.f = fv[order[0]];
    result.iterations = iter;
    result.converged = converged;
    if (!result.best_trace.empty()) {
        result.best_trace.push_back(result.f);
    }
    return result;
}

}  // namespace gmidas
