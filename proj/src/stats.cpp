#include "gmidas/stats.hpp"

#include "gmidas/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gmidas::stats {

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / 1.4142135623730951);
}

DescriptiveStats describe(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw TooFewObservations("describe needs at least 2 observations");

    DescriptiveStats s;
    s.n = n;
    for (double v : x) s.mean += v;
    s.mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double nn = static_cast<double>(n);
    s.std_dev = std::sqrt(m2 / (nn - 1.0));
    m2 /= nn;
    m3 /= nn;
    m4 /= nn;

    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis = m4 / (m2 * m2);
    } else {
        s.shape_defined = false;
        s.skewness = std::numeric_limits<double>::quiet_NaN();
        s.kurtosis = std::numeric_limits<double>::quiet_NaN();
    }

    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

TestResult jarque_bera(std::span<const double> x, double level) {
    if (x.size() < 8) throw TooFewObservations("jarque_bera needs at least 8 observations");
    const DescriptiveStats d = describe(x);
    if (!d.shape_defined) {
        throw SkewUndefined("jarque_bera: zero-variance sample has undefined shape moments");
    }
    const double n = static_cast<double>(d.n);
    const double excess = d.kurtosis - 3.0;
    TestResult r;
    r.statistic = n / 6.0 * (d.skewness * d.skewness + excess * excess / 4.0);
    r.p_value = std::exp(-0.5 * r.statistic);  // chi-squared(2) survival, exact
    r.level = level;
    r.reject = r.p_value < level;
    r.detail = "skewness=" + std::to_string(d.skewness) + " kurtosis=" +
               std::to_string(d.kurtosis) + " n=" + std::to_string(d.n);
    return r;
}

namespace {

// MacKinnon (1994) response-surface coefficients for the tau distribution of
// a single series: p = Phi(c0 + c1 t + c2 t^2 [+ c3 t^3]), with the small-p
// branch below tau_star and hard 0/1 caps outside [tau_min, tau_max].
struct MacKinnonSurface {
    double tau_star, tau_min, tau_max;
    double small_p[3];
    double large_p[4];
};

constexpr MacKinnonSurface kSurfaceNone = {
    -1.04, -19.04, std::numeric_limits<double>::infinity(),
    {0.6344, 1.2378, 0.032496},
    {0.4797, 0.93557, -0.06999, 0.033066}};

constexpr MacKinnonSurface kSurfaceConst = {
    -1.61, -18.83, 2.74,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368}};

constexpr MacKinnonSurface kSurfaceTrend = {
    -2.89, -16.18, 0.70,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285}};

double mackinnon_p_value(double t, AdfSpec spec) {
    const MacKinnonSurface& s = spec == AdfSpec::none
                                    ? kSurfaceNone
                                    : (spec == AdfSpec::constant ? kSurfaceConst : kSurfaceTrend);
    if (t <= s.tau_min) return 0.0;
    if (t >= s.tau_max) return 1.0;
    double z;
    if (t <= s.tau_star) {
        z = s.small_p[0] + t * (s.small_p[1] + t * s.small_p[2]);
    } else {
        z = s.large_p[0] + t * (s.large_p[1] + t * (s.large_p[2] + t * s.large_p[3]));
    }
    return standard_normal_cdf(z);
}

struct AdfRegression {
    double t_stat = 0.0;
    double aic = 0.0;
};

// Dickey-Fuller regression of dx_t on x_{t-1}, deterministic terms and p
// lagged differences, over rows [offset, end) of the differenced sample.
AdfRegression adf_regression(std::span<const double> x, int p, AdfSpec spec, std::size_t offset) {
    const std::size_t n = x.size();
    const std::size_t n_dx = n - 1;
    const std::size_t rows = n_dx - offset;
    const std::size_t p_sz = static_cast<std::size_t>(p);

    std::size_t n_det = spec == AdfSpec::none ? 0 : (spec == AdfSpec::constant ? 1 : 2);
    const std::size_t cols = 1 + n_det + p_sz;
    if (rows <= cols + 1) {
        throw TooFewObservations("adf_test: not enough observations for the requested lags");
    }

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd dy(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t t = offset + i + 1;  // index into x of the current day
        dy(static_cast<Eigen::Index>(i)) = x[t] - x[t - 1];
        Eigen::Index c = 0;
        design(static_cast<Eigen::Index>(i), c++) = x[t - 1];
        if (n_det >= 1) design(static_cast<Eigen::Index>(i), c++) = 1.0;
        if (n_det >= 2) design(static_cast<Eigen::Index>(i), c++) = static_cast<double>(i + 1);
        for (std::size_t j = 1; j <= p_sz; ++j) {
            design(static_cast<Eigen::Index>(i), c++) = x[t - j] - x[t - j - 1];
        }
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        throw SingularRegression("adf_test: collinear regressors");
    }
    const Eigen::VectorXd coef = qr.solve(dy);
    const Eigen::VectorXd resid = dy - design * coef;
    const double ssr = resid.squaredNorm();
    const double df = static_cast<double>(rows - cols);
    const double sigma2 = ssr / df;

    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(
            static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols)));
    const double se_gamma = std::sqrt(sigma2 * xtx_inv(0, 0));
    if (!(se_gamma > 0.0) || !std::isfinite(se_gamma)) {
        throw SingularRegression("adf_test: zero standard error on the level coefficient");
    }

    AdfRegression out;
    out.t_stat = coef(0) / se_gamma;
    // Gaussian AIC up to constants; rows is fixed across candidate lag orders
    const double nn = static_cast<double>(rows);
    out.aic = nn * std::log(ssr / nn) + 2.0 * static_cast<double>(cols);
    return out;
}

}  // namespace

TestResult adf_test(std::span<const double> x, int max_lags, AdfSpec spec, double level) {
    const std::size_t n = x.size();
    if (max_lags < 0) {
        max_lags = static_cast<int>(
            std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    }
    if (n < static_cast<std::size_t>(max_lags) + 10) {
        throw TooFewObservations("adf_test needs at least max_lags + 10 observations");
    }

    // pick the lag order on a common sample so AIC values are comparable
    const auto common_offset = static_cast<std::size_t>(max_lags);
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_lags; ++p) {
        const AdfRegression reg = adf_regression(x, p, spec, common_offset);
        if (reg.aic < best_aic) {
            best_aic = reg.aic;
            best_lag = p;
        }
    }

    // final regression with the chosen order over its full usable sample
    const AdfRegression final_reg =
        adf_regression(x, best_lag, spec, static_cast<std::size_t>(best_lag));

    TestResult r;
    r.statistic = final_reg.t_stat;
    r.p_value = mackinnon_p_value(final_reg.t_stat, spec);
    r.level = level;
    r.reject = r.p_value < level;
    const char* spec_name = spec == AdfSpec::none
                                ? "none"
                                : (spec == AdfSpec::constant ? "constant" : "constant+trend");
    r.detail = "lags=" + std::to_string(best_lag) + " (AIC), spec=" + spec_name;
    return r;
}

}  // namespace gmidas::stats
