#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace gmidas::stats {

/// Sample moments. Kurtosis is reported raw (a normal sample sits near 3,
/// not 0); skewness and kurtosis use central moments over n, the standard
/// deviation uses the n-1 denominator.
struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
    double min = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;  // NaN when undefined
    double kurtosis = 0.0;  // NaN when undefined
    bool shape_defined = true;  // false for zero-variance samples
};

DescriptiveStats describe(std::span<const double> x);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;   // at `level`
    double level = 0.05;
    std::string detail;
};

/// JB = n/6 * (S^2 + (K-3)^2 / 4); p-value from chi-squared with 2 df.
TestResult jarque_bera(std::span<const double> x, double level = 0.05);

enum class AdfSpec { constant, constant_trend, none };

/// Augmented Dickey-Fuller regression with the lag order picked by AIC over
/// 0..max_lags; p-values by MacKinnon's (1994) response surface. max_lags < 0
/// selects the Schwert rule 12*(n/100)^(1/4).
TestResult adf_test(std::span<const double> x, int max_lags = -1,
                    AdfSpec spec = AdfSpec::constant, double level = 0.05);

double standard_normal_cdf(double x);

}  // namespace gmidas::stats
