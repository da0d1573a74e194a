#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmidas/errors.hpp"
#include "gmidas/forecast.hpp"

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace gmidas;

namespace {

// forecast at known parameters without running the optimizer
FitResult fixed_fit(const ParameterSet& params, const MixedPanel& panel) {
    FitResult f;
    f.params = params;
    f.transform = TransformSpec{};
    f.param_names = free_param_names(f.transform);
    f.n_free_params = f.transform.n_free();
    f.regressor = panel.regressor_label;
    f.n_obs = panel.n_days_total();
    f.converged = true;
    if (!panel.periods.empty()) {
        f.window_start = panel.periods.front().id;
        f.window_end = panel.periods.back().id;
    }
    return f;
}

ForecastSeries constant_series(std::size_t n, double actual, double predicted) {
    ForecastSeries fc;
    for (std::size_t i = 0; i < n; ++i) {
        fc.dates.push_back({2015, 1 + static_cast<int>(i) / 28, static_cast<int>(i) % 28 + 1});
        fc.actual_proxy.push_back(actual);
        fc.predicted_variance.push_back(predicted);
    }
    return fc;
}

}  // namespace

TEST_CASE("static model predicts its constant variance") {
    ParameterSet p;
    p.mu = 0.0;
    p.alpha = 1e-10;
    p.beta = 1e-10;
    p.theta = 0.0;
    p.omega2 = 1.0;
    p.m = 0.33;
    const auto panel = support::panel_from_returns(
        {{0.01, -0.02, 0.005}, {0.02, 0.0, -0.01}}, {{1.0}, {1.0}});
    const auto fc = forecast_one_step(fixed_fit(p, panel), panel,
                                      {panel.periods.front().id, panel.periods.back().id});
    REQUIRE(fc.size() == 6);
    for (double v : fc.predicted_variance) CHECK(v == doctest::Approx(0.33).epsilon(1e-7));
}

TEST_CASE("self-forecast reproduces the conditional variance path") {
    auto params = support::reference_params();
    const auto data = support::simulate_dataset(params, 48, 20, 12, 64);
    const auto fit = fixed_fit(params, data.panel);
    const auto fc = forecast_one_step(fit, data.panel,
                                      {data.panel.periods.front().id,
                                       data.panel.periods.back().id});
    const auto path = conditional_variance_path(params, data.panel);
    REQUIRE(fc.size() == path.sigma2.size());
    for (std::size_t i = 0; i < fc.size(); ++i) {
        CHECK(fc.predicted_variance[i] == path.sigma2[i]);  // identical numbers
    }
    // actual proxies are squared demeaned returns
    const auto returns = all_returns(data.panel);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const double dev = returns[i] - params.mu;
        CHECK(fc.actual_proxy[i] == dev * dev);
    }
}

TEST_CASE("forecasts are calibrated at the true parameters") {
    auto params = support::reference_params();
    const auto data = support::simulate_dataset(params, 4546, 22, 24, 7);
    REQUIRE(data.panel.n_days_total() >= 100000);
    const auto fc = forecast_one_step(fixed_fit(params, data.panel), data.panel,
                                      {data.panel.periods.front().id,
                                       data.panel.periods.back().id});
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        ratio_sum += fc.actual_proxy[i] / fc.predicted_variance[i];
    }
    const double mean_ratio = ratio_sum / static_cast<double>(fc.size());
    CHECK(mean_ratio > 0.95);
    CHECK(mean_ratio < 1.05);
}

TEST_CASE("no leakage from future returns") {
    auto params = support::reference_params();
    const auto data = support::simulate_dataset(params, 24, 15, 6, 19);
    const auto fit = fixed_fit(params, data.panel);
    const MonthSpan whole{data.panel.periods.front().id, data.panel.periods.back().id};
    const auto base = forecast_one_step(fit, data.panel, whole);

    // perturb the return on one day in the middle of the sample
    MixedPanel bumped = data.panel;
    const std::size_t target_period = 12;
    const std::size_t target_day = 7;
    bumped.periods[target_period].day_returns[target_day] += 5.0;
    std::size_t flat_index = target_day;
    for (std::size_t t = 0; t < target_period; ++t) {
        flat_index += bumped.periods[t].n_days();
    }

    const auto moved = forecast_one_step(fit, bumped, whole);
    REQUIRE(moved.size() == base.size());
    // predictions through the perturbed day itself are bit-identical
    for (std::size_t i = 0; i <= flat_index; ++i) {
        CHECK(moved.predicted_variance[i] == base.predicted_variance[i]);
    }
    // and the very next prediction reacts
    CHECK(moved.predicted_variance[flat_index + 1] != base.predicted_variance[flat_index + 1]);
}

TEST_CASE("forecast range validation") {
    auto params = support::reference_params();
    const auto data = support::simulate_dataset(params, 24, 15, 6, 3);
    auto fit = fixed_fit(params, data.panel);
    fit.window_start = add_months(data.panel.periods.front().id, 6);

    CHECK_THROWS_AS(forecast_one_step(fit, data.panel,
                                      {data.panel.periods.front().id,
                                       data.panel.periods.back().id}),
                    RangeBeforeFitWindow);
    CHECK_THROWS_AS(forecast_one_step(fit, data.panel,
                                      {*fit.window_start,
                                       add_months(data.panel.periods.back().id, 5)}),
                    InsufficientLagHistory);
    // empty range is fine and yields an empty series
    const auto empty = forecast_one_step(fit, data.panel,
                                         {add_months(*fit.window_start, 3),
                                          add_months(*fit.window_start, 2)});
    CHECK(empty.empty());
}

TEST_CASE("loss functions on perfect and constant-error forecasts") {
    SUBCASE("perfect forecasts have zero loss") {
        auto fc = constant_series(40, 2.0, 2.0);
        const auto r = evaluate(fc);
        CHECK(r.rmse == 0.0);
        CHECK(r.rmae == 0.0);
        CHECK(r.rmsd == 0.0);
        CHECK(r.rmad == 0.0);
        CHECK(r.T == 40);
    }
    SUBCASE("actual 2, predicted 1") {
        for (std::size_t T : {std::size_t{1}, std::size_t{7}, std::size_t{100}}) {
            const auto r = evaluate(constant_series(T, 2.0, 1.0));
            CHECK(r.rmse == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.rmae == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.rmsd == doctest::Approx(0.414214).epsilon(1e-6));
            CHECK(r.rmad == doctest::Approx(0.643594).epsilon(1e-6));
        }
    }
    SUBCASE("empty series") {
        ForecastSeries fc;
        CHECK_THROWS_AS(evaluate(fc), EmptySeries);
    }
}

TEST_CASE("loss scaling in the variance units") {
    NormalSampler normal(5);
    ForecastSeries fc;
    for (int i = 0; i < 200; ++i) {
        fc.dates.push_back({2015, 1 + i / 28, i % 28 + 1});
        const double predicted = 0.02 * std::exp(0.3 * normal());
        const double actual = predicted * std::pow(normal(), 2);
        fc.predicted_variance.push_back(predicted);
        fc.actual_proxy.push_back(actual);
    }
    const auto base = evaluate(fc);

    const double c = 9.0;
    ForecastSeries scaled = fc;
    for (double& v : scaled.predicted_variance) v *= c;
    for (double& v : scaled.actual_proxy) v *= c;
    const auto r = evaluate(scaled);
    CHECK(r.rmse == doctest::Approx(c * base.rmse).epsilon(1e-10));
    CHECK(r.rmae == doctest::Approx(std::sqrt(c) * base.rmae).epsilon(1e-10));
    CHECK(r.rmsd == doctest::Approx(std::sqrt(c) * base.rmsd).epsilon(1e-10));
    CHECK(r.rmad == doctest::Approx(std::pow(c, 0.25) * base.rmad).epsilon(1e-10));
}

TEST_CASE("losses respect pointwise dominance and day order does not matter") {
    NormalSampler normal(17);
    ForecastSeries a, b;
    for (int i = 0; i < 150; ++i) {
        const Date d{2014, 1 + i / 28, i % 28 + 1};
        const double actual = std::pow(0.1 * normal(), 2);
        const double err = 0.05 * std::abs(normal()) + 0.001;
        a.dates.push_back(d);
        a.actual_proxy.push_back(actual);
        a.predicted_variance.push_back(actual + 0.5 * err);  // |error_A| < |error_B|
        b.dates.push_back(d);
        b.actual_proxy.push_back(actual);
        b.predicted_variance.push_back(actual + err);
    }
    const auto ra = evaluate(a);
    const auto rb = evaluate(b);
    CHECK(ra.rmse <= rb.rmse);
    CHECK(ra.rmae <= rb.rmae);
    CHECK(ra.rmsd <= rb.rmsd);
    CHECK(ra.rmad <= rb.rmad);

    // permuting days leaves every loss unchanged
    ForecastSeries shuffled = a;
    std::reverse(shuffled.predicted_variance.begin(), shuffled.predicted_variance.end());
    std::reverse(shuffled.actual_proxy.begin(), shuffled.actual_proxy.end());
    const auto rs = evaluate(shuffled);
    CHECK(rs.rmse == doctest::Approx(ra.rmse).epsilon(1e-12));
    CHECK(rs.rmae == doctest::Approx(ra.rmae).epsilon(1e-12));
    CHECK(rs.rmsd == doctest::Approx(ra.rmsd).epsilon(1e-12));
    CHECK(rs.rmad == doctest::Approx(ra.rmad).epsilon(1e-12));
}

TEST_CASE("run_protocol end to end on a 2008-2015-shaped dataset") {
    auto truth = support::reference_params();
    // daily series starting 2008-01 with its own regressor history
    const auto regressor = simulate_regressor_path({2006, 1}, 117, 0.1, 0.85, 0.5, 404, "epu");
    const auto sim = simulate(truth, regressor, 22, 24, 404);
    REQUIRE(sim.daily.dates.front().year == 2008);

    WindowConfig window;
    window.estimation_start = {2010, 1};
    window.estimation_end = {2014, 9};
    window.out_of_sample_start = {2014, 10};
    window.out_of_sample_end = {2015, 9};
    window.n_lags = 24;

    const auto result = run_protocol(sim.daily, regressor, window);
    CHECK(result.fit.converged);
    CHECK(result.fit.window_start == YearMonth{2010, 1});
    CHECK(result.fit.window_end == YearMonth{2014, 9});
    CHECK(result.in_sample.sample == SampleTag::full_sample);
    CHECK(result.in_sample.T == 57 * 22);
    REQUIRE(result.out_of_sample.has_value());
    CHECK(result.out_of_sample->sample == SampleTag::out_of_sample);
    CHECK(result.out_of_sample->T == 12 * 22);
    CHECK(result.oos_forecasts.dates.front() == Date{2014, 10, 1});
    CHECK(result.oos_forecasts.dates.back() == Date{2015, 9, 22});
}

TEST_CASE("out-of-sample losses stay within twice the in-sample losses at truth") {
    auto truth = support::reference_params();
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto data = support::simulate_dataset(truth, 69, 22, 24, seed);
        const auto fit = fixed_fit(truth, data.panel);
        const YearMonth est_start = data.panel.periods.front().id;           // 58 months
        const YearMonth est_end = add_months(est_start, 57);
        const YearMonth oos_start = add_months(est_start, 58);               // 11 months
        const YearMonth oos_end = data.panel.periods.back().id;

        const auto in_fc = forecast_one_step(fit, data.panel, {est_start, est_end});
        const auto oos_fc = forecast_one_step(fit, data.panel, {oos_start, oos_end});
        const auto in_losses = evaluate(in_fc);
        const auto oos_losses = evaluate(oos_fc, SampleTag::out_of_sample);
        const bool within = oos_losses.rmse <= 2.0 * in_losses.rmse &&
                            oos_losses.rmae <= 2.0 * in_losses.rmae &&
                            oos_losses.rmsd <= 2.0 * in_losses.rmsd &&
                            oos_losses.rmad <= 2.0 * in_losses.rmad;
        if (within) ++ok;
    }
    CHECK(ok >= 17);  // sanity envelope, not a sharp bound
}

TEST_CASE("window validation in run_protocol") {
    auto truth = support::reference_params();
    const auto regressor = simulate_regressor_path({2006, 1}, 80, 0.1, 0.85, 0.5, 11, "x");
    const auto sim = simulate(truth, regressor, 15, 24, 11);

    WindowConfig window;
    window.estimation_start = {2010, 1};
    window.estimation_end = {2011, 12};
    window.out_of_sample_start = {2011, 6};  // overlaps the estimation window
    window.out_of_sample_end = {2012, 6};
    window.n_lags = 24;
    CHECK_THROWS_AS(run_protocol(sim.daily, regressor, window), RangeBeforeFitWindow);
}

TEST_CASE("run_protocol degenerates cleanly without an out-of-sample span") {
    auto truth = support::reference_params();
    const auto regressor = simulate_regressor_path({2008, 1}, 60, 0.1, 0.85, 0.5, 21, "x");
    const auto sim = simulate(truth, regressor, 15, 24, 21);

    WindowConfig window;
    window.estimation_start = {2010, 1};
    window.estimation_end = {2012, 12};
    window.out_of_sample_start = {2013, 1};
    window.out_of_sample_end = {2012, 12};  // start > end: no span
    window.n_lags = 24;
    CHECK_FALSE(window.has_out_of_sample());

    const auto result = run_protocol(sim.daily, regressor, window);
    CHECK(result.in_sample.T == 36 * 15);
    CHECK_FALSE(result.out_of_sample.has_value());
    CHECK(result.oos_forecasts.empty());
}
