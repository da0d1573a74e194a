#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmidas/csv.hpp"
#include "gmidas/errors.hpp"
#include "gmidas/model.hpp"
#include "gmidas/series.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

using namespace gmidas;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

DailySeries make_returns(const std::vector<std::pair<Date, double>>& obs) {
    DailySeries s;
    s.kind = SeriesKind::log_return;
    for (const auto& [d, v] : obs) {
        s.dates.push_back(d);
        s.values.push_back(v);
    }
    return s;
}

LowFrequencySeries make_monthly(YearMonth start, const std::vector<double>& values,
                                const std::string& label = "x") {
    LowFrequencySeries s;
    s.label = label;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.months.push_back(add_months(start, static_cast<int>(i)));
        s.values.push_back(values[i]);
    }
    return s;
}

}  // namespace

TEST_CASE("load_daily_series parses and sorts") {
    TempFile f("gmidas_daily.csv", "date,price\n2008-01-03,23.1\n2008-01-02,22.5\n");
    csv::DailySchema schema;
    schema.value_column = "price";
    const auto s = csv::load_daily_series(f.path, SeriesKind::price, schema);
    REQUIRE(s.size() == 2);
    CHECK(s.kind == SeriesKind::price);
    CHECK(s.dates[0] == Date{2008, 1, 2});
    CHECK(s.values[0] == doctest::Approx(22.5));
    CHECK(s.dates[1] == Date{2008, 1, 3});

    // shuffled rows load to the identical series
    TempFile g("gmidas_daily2.csv", "date,price\n2008-01-02,22.5\n2008-01-03,23.1\n");
    const auto s2 = csv::load_daily_series(g.path, SeriesKind::price, schema);
    CHECK(s2.dates == s.dates);
    CHECK(s2.values == s.values);
}

TEST_CASE("load_daily_series accepts CRLF and default schema") {
    TempFile f("gmidas_crlf.csv", "date,value\r\n2010-05-03,0.01\r\n2010-05-04,-0.02\r\n");
    const auto s = csv::load_daily_series(f.path, SeriesKind::log_return);
    REQUIRE(s.size() == 2);
    CHECK(s.values[1] == doctest::Approx(-0.02));
}

TEST_CASE("load_daily_series rejects bad input") {
    SUBCASE("non-positive price") {
        TempFile f("gmidas_bad1.csv", "date,value\n2008-01-02,0.0\n2008-01-03,1.0\n");
        CHECK_THROWS_AS(csv::load_daily_series(f.path, SeriesKind::price), NonPositivePrice);
    }
    SUBCASE("malformed row reports its line number") {
        TempFile f("gmidas_bad2.csv", "date,value\n2008-01-02,1.0\nnot-a-date,2.0\n");
        try {
            csv::load_daily_series(f.path, SeriesKind::price);
            FAIL("expected MalformedRow");
        } catch (const MalformedRow& e) {
            CHECK(e.line_number == 3);
        }
    }
    SUBCASE("non-numeric cell is rejected, not interpolated") {
        TempFile f("gmidas_bad3.csv", "date,value\n2008-01-02,1.0\n2008-01-03,\n");
        CHECK_THROWS_AS(csv::load_daily_series(f.path, SeriesKind::price), MalformedRow);
    }
    SUBCASE("duplicate date") {
        TempFile f("gmidas_bad4.csv", "date,value\n2008-01-02,1.0\n2008-01-02,2.0\n");
        CHECK_THROWS_AS(csv::load_daily_series(f.path, SeriesKind::price), DuplicateDate);
    }
    SUBCASE("empty file") {
        TempFile f("gmidas_bad5.csv", "");
        CHECK_THROWS_AS(csv::load_daily_series(f.path, SeriesKind::price), MalformedRow);
    }
}

TEST_CASE("compute_log_returns") {
    DailySeries prices;
    prices.kind = SeriesKind::price;
    prices.dates = {{2008, 1, 2}, {2008, 1, 3}};
    prices.values = {1.0, std::exp(1.0)};
    const auto r = compute_log_returns(prices);
    REQUIRE(r.size() == 1);
    CHECK(r.kind == SeriesKind::log_return);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.dates[0] == Date{2008, 1, 3});  // later day of the pair

    SUBCASE("constant prices give zero returns") {
        DailySeries flat;
        flat.kind = SeriesKind::price;
        flat.dates = {{2008, 1, 2}, {2008, 1, 3}, {2008, 1, 4}};
        flat.values = {100.0, 100.0, 100.0};
        const auto rr = compute_log_returns(flat);
        REQUIRE(rr.size() == 2);
        CHECK(rr.values[0] == 0.0);
        CHECK(rr.values[1] == 0.0);
    }
    SUBCASE("ln(e^2) = 2") {
        DailySeries p2;
        p2.kind = SeriesKind::price;
        p2.dates = {{2008, 1, 2}, {2008, 1, 3}};
        p2.values = {1.0, std::exp(2.0)};
        CHECK(compute_log_returns(p2).values[0] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("already-returns input is rejected") {
        const auto returns = make_returns({{{2008, 1, 2}, 0.1}});
        CHECK_THROWS_AS(compute_log_returns(returns), WrongKind);
    }
}

TEST_CASE("realized_volatility") {
    SUBCASE("zero returns give zero RV") {
        const auto r = make_returns(
            {{{2010, 1, 4}, 0.0}, {{2010, 1, 5}, 0.0}, {{2010, 1, 6}, 0.0}});
        const auto rv = realized_volatility(r);
        REQUIRE(rv.size() == 1);
        CHECK(rv.values[0] == 0.0);
    }
    SUBCASE("sum of squares within the month") {
        const auto r = make_returns({{{2010, 1, 4}, 0.1}, {{2010, 1, 5}, -0.2}});
        CHECK(realized_volatility(r).values[0] == doctest::Approx(0.05).epsilon(1e-14));
    }
    SUBCASE("one value per month") {
        const auto r = make_returns({{{2010, 1, 4}, 0.1}, {{2010, 2, 3}, 0.3}});
        const auto rv = realized_volatility(r);
        REQUIRE(rv.size() == 2);
        CHECK(rv.values[0] == doctest::Approx(0.01));
        CHECK(rv.values[1] == doctest::Approx(0.09));
    }
    SUBCASE("a month gap inside the sample is an error") {
        const auto r = make_returns({{{2010, 1, 4}, 0.1}, {{2010, 3, 3}, 0.3}});
        CHECK_THROWS_AS(realized_volatility(r), EmptyPeriod);
    }
}

TEST_CASE("realized_volatility is permutation-invariant and scales quadratically") {
    NormalSampler normal(77);
    std::vector<double> day_values(40);
    for (double& v : day_values) v = 0.02 * normal();

    auto build = [&](const std::vector<double>& vals) {
        DailySeries s;
        s.kind = SeriesKind::log_return;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            s.dates.push_back({2011, i < 20 ? 3 : 4, static_cast<int>(i % 20) + 1});
            s.values.push_back(vals[i]);
        }
        return s;
    };

    const auto rv = realized_volatility(build(day_values));

    // permute within each month
    std::vector<double> permuted = day_values;
    std::swap(permuted[0], permuted[13]);
    std::swap(permuted[21], permuted[35]);
    const auto rv_perm = realized_volatility(build(permuted));
    for (std::size_t t = 0; t < rv.size(); ++t) {
        CHECK(rv_perm.values[t] == doctest::Approx(rv.values[t]).epsilon(1e-12));
    }

    // scale by c multiplies RV by c^2
    const double c = 2.5;
    std::vector<double> scaled = day_values;
    for (double& v : scaled) v *= c;
    const auto rv_scaled = realized_volatility(build(scaled));
    for (std::size_t t = 0; t < rv.size(); ++t) {
        CHECK(rv_scaled.values[t] == doctest::Approx(c * c * rv.values[t]).epsilon(1e-12));
    }
}

TEST_CASE("log-return round trip through exp-cumsum") {
    NormalSampler normal(123);
    std::vector<double> returns(250);
    for (double& v : returns) v = 0.015 * normal();

    DailySeries prices;
    prices.kind = SeriesKind::price;
    double log_price = std::log(20.0);
    for (std::size_t i = 0; i <= returns.size(); ++i) {
        if (i > 0) log_price += returns[i - 1];
        prices.dates.push_back({2012 + static_cast<int>(i / 336),
                                1 + static_cast<int>(i / 28) % 12,
                                static_cast<int>(i % 28) + 1});
        prices.values.push_back(std::exp(log_price));
    }

    const auto recovered = compute_log_returns(prices);
    REQUIRE(recovered.size() == returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) {
        CHECK(recovered.values[i] == doctest::Approx(returns[i]).epsilon(1e-12));
    }
}

TEST_CASE("align_panel builds the lag structure") {
    // daily 2010-01..2010-03, regressor 2008-01..2010-02, K=24
    DailySeries daily;
    daily.kind = SeriesKind::log_return;
    for (int m = 0; m < 3; ++m) {
        for (int d = 1; d <= 5; ++d) {
            daily.dates.push_back({2010, m + 1, d});
            daily.values.push_back(0.01 * d);
        }
    }
    std::vector<double> reg_values(26);
    std::iota(reg_values.begin(), reg_values.end(), 1.0);  // 2008-01 -> 1.0, ...
    const auto regressor = make_monthly({2008, 1}, reg_values);

    const auto panel = align_panel(daily, regressor, 24);
    REQUIRE(panel.n_periods() == 3);
    CHECK(panel.n_lags == 24);
    CHECK(panel.n_excluded_leading == 0);
    CHECK(panel.n_days_total() == 15);

    // no look-ahead: lag k of period t is the regressor at month t-k
    for (std::size_t t = 0; t < panel.n_periods(); ++t) {
        const auto row = panel.lag_row(t);
        for (int k = 1; k <= 24; ++k) {
            const int want_month = panel.periods[t].id.index() - k;
            const int reg_idx = want_month - regressor.months.front().index();
            CHECK(row[static_cast<std::size_t>(k - 1)] ==
                  regressor.values[static_cast<std::size_t>(reg_idx)]);
        }
    }
}

TEST_CASE("align_panel error paths") {
    DailySeries daily;
    daily.kind = SeriesKind::log_return;
    for (int m = 0; m < 3; ++m) {
        daily.dates.push_back({2010, m + 1, 2});
        daily.values.push_back(0.01);
    }

    SUBCASE("insufficient lag history reports the first usable month") {
        std::vector<double> vals(9, 1.0);  // 2009-06 .. 2010-02
        const auto regressor = make_monthly({2009, 6}, vals);
        try {
            align_panel(daily, regressor, 24);
            FAIL("expected InsufficientLagHistory");
        } catch (const InsufficientLagHistory& e) {
            CHECK(e.first_usable_month == "2011-06");
        }
    }
    SUBCASE("leading months without history are excluded and counted") {
        std::vector<double> vals(13, 2.0);  // 2009-02 .. 2010-02: 2010-02 usable with K=12
        const auto regressor = make_monthly({2009, 2}, vals);
        const auto panel = align_panel(daily, regressor, 12);
        CHECK(panel.n_excluded_leading == 1);
        REQUIRE(panel.n_periods() == 2);
        CHECK(panel.periods[0].id == YearMonth{2010, 2});
    }
    SUBCASE("regressor ending too early is a gap") {
        std::vector<double> vals(12, 2.0);  // 2009-01 .. 2009-12: month 2010-02 needs 2010-01
        const auto regressor = make_monthly({2009, 1}, vals);
        CHECK_THROWS_AS(align_panel(daily, regressor, 12), RegressorGap);
    }
    SUBCASE("K=1 takes the prior month's value") {
        const auto regressor = make_monthly({2009, 12}, {5.0, 6.0, 7.0});
        const auto panel = align_panel(daily, regressor, 1);
        REQUIRE(panel.n_periods() == 3);
        CHECK(panel.lag_row(0)[0] == 5.0);
    }
}

TEST_CASE("monthly series save/load round trip") {
    const auto s = make_monthly({2009, 11}, {1.5, 2.5, 3.5}, "epu");
    const auto path = std::filesystem::temp_directory_path() / "gmidas_monthly_rt.csv";
    csv::save_monthly_series(path, s);
    const auto loaded = csv::load_monthly_series(path, "epu");
    REQUIRE(loaded.size() == 3);
    CHECK(loaded.months.front() == YearMonth{2009, 11});
    CHECK(loaded.values[2] == doctest::Approx(3.5));
    std::filesystem::remove(path);
}

TEST_CASE("monthly series with a gap is rejected") {
    LowFrequencySeries s;
    s.label = "gappy";
    s.months = {{2009, 1}, {2009, 3}};
    s.values = {1.0, 2.0};
    CHECK_THROWS_AS(validate(s), RegressorGap);
}
