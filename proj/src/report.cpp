#include "gmidas/report.hpp"

#include "gmidas/csv.hpp"
#include "gmidas/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gmidas::report {

namespace {

json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string scientific(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(4) << v;
    return os.str();
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string stars(double t_stat) {
    const double a = std::abs(t_stat);
    if (a > 2.5758) return "***";
    if (a > 1.9600) return "**";
    if (a > 1.6449) return "*";
    return "";
}

json stats_to_json(const std::vector<StatsColumn>& columns) {
    json cols = json::array();
    for (const auto& c : columns) {
        json col;
        col["label"] = c.label;
        col["n"] = c.moments.n;
        col["mean"] = c.moments.mean;
        col["median"] = c.moments.median;
        col["maximum"] = c.moments.max;
        col["minimum"] = c.moments.min;
        col["std_dev"] = c.moments.std_dev;
        col["skewness"] = number_or_null(c.moments.skewness);
        col["kurtosis"] = number_or_null(c.moments.kurtosis);
        col["jarque_bera"] = json{{"statistic", c.jarque_bera.statistic},
                                  {"p_value", c.jarque_bera.p_value},
                                  {"reject_normality", c.jarque_bera.reject}};
        col["adf"] = json{{"statistic", c.adf.statistic},
                          {"p_value", c.adf.p_value},
                          {"reject_unit_root", c.adf.reject},
                          {"detail", c.adf.detail}};
        cols.push_back(std::move(col));
    }
    return json{{"report", "descriptive_statistics"}, {"series", cols}};
}

std::string stats_to_text(const std::vector<StatsColumn>& columns) {
    constexpr std::size_t kLabel = 14;
    constexpr std::size_t kCell = 16;
    std::ostringstream os;
    os << pad("", kLabel);
    for (const auto& c : columns) os << pad(c.label, kCell);
    os << "\n";

    const auto row = [&](const std::string& name, auto getter) {
        os << pad(name, kLabel);
        for (const auto& c : columns) os << pad(getter(c), kCell);
        os << "\n";
    };
    row("Mean", [](const StatsColumn& c) { return fixed(c.moments.mean, 4); });
    row("Median", [](const StatsColumn& c) { return fixed(c.moments.median, 4); });
    row("Maximum", [](const StatsColumn& c) { return fixed(c.moments.max, 4); });
    row("Minimum", [](const StatsColumn& c) { return fixed(c.moments.min, 4); });
    row("Std. Dev.", [](const StatsColumn& c) { return fixed(c.moments.std_dev, 4); });
    row("Skewness", [](const StatsColumn& c) {
        return c.moments.shape_defined ? fixed(c.moments.skewness, 4) : std::string("undefined");
    });
    row("Kurtosis", [](const StatsColumn& c) {
        return c.moments.shape_defined ? fixed(c.moments.kurtosis, 4) : std::string("undefined");
    });
    row("Jarque-Bera", [](const StatsColumn& c) {
        return fixed(c.jarque_bera.statistic, 4);
    });
    row("(Probability)", [](const StatsColumn& c) {
        return "[" + fixed(c.jarque_bera.p_value, 4) + "]";
    });
    row("ADF Test", [](const StatsColumn& c) { return fixed(c.adf.statistic, 4); });
    row("(Level)", [](const StatsColumn& c) { return "[" + fixed(c.adf.p_value, 4) + "]"; });
    row("Observations", [](const StatsColumn& c) { return std::to_string(c.moments.n); });
    return os.str();
}

json fit_to_json(const FitResult& fit) {
    const std::vector<double> values = free_param_values(fit.params, fit.transform);
    json params = json::array();
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        json row;
        row["name"] = fit.param_names[i];
        row["value"] = values[i];
        row["std_error"] = fit.se_available ? number_or_null(fit.std_errors[i]) : json(nullptr);
        row["t_stat"] = fit.se_available ? number_or_null(fit.t_stats[i]) : json(nullptr);
        params.push_back(std::move(row));
    }
    json j{
        {"report", "fit"},
        {"regressor", fit.regressor},
        {"parameters", params},
        {"fixed", {{"omega1", fit.transform.fix_omega1}, {"theta", fit.transform.fix_theta}}},
        {"link", fit.link == LongRunLink::exponential ? "exponential" : "level"},
        {"log_likelihood", fit.log_lik},
        {"aic", fit.aic},
        {"n_obs", fit.n_obs},
        {"converged", fit.converged},
        {"n_iterations", fit.n_iterations},
        {"se_available", fit.se_available},
    };
    if (fit.window_start) j["window_start"] = to_string(*fit.window_start);
    if (fit.window_end) j["window_end"] = to_string(*fit.window_end);
    return j;
}

FitResult fit_from_json(const json& j) {
    FitResult fit;
    fit.transform.fix_omega1 = j.at("fixed").at("omega1").get<bool>();
    fit.transform.fix_theta = j.at("fixed").at("theta").get<bool>();
    fit.link = j.value("link", "level") == std::string("exponential") ? LongRunLink::exponential
                                                                      : LongRunLink::level;
    fit.param_names = free_param_names(fit.transform);

    std::vector<double> values;
    std::vector<double> ses, ts;
    for (const auto& p : j.at("parameters")) {
        values.push_back(p.at("value").get<double>());
        ses.push_back(p.at("std_error").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                  : p.at("std_error").get<double>());
        ts.push_back(p.at("t_stat").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : p.at("t_stat").get<double>());
    }
    if (values.size() != fit.param_names.size()) {
        throw InvalidConfig("fit JSON: expected " + std::to_string(fit.param_names.size()) +
                            " parameters, got " + std::to_string(values.size()));
    }
    fit.params = with_free_params(ParameterSet{}, values, fit.transform);
    fit.std_errors = std::move(ses);
    fit.t_stats = std::move(ts);
    fit.se_available = j.value("se_available", false);
    fit.log_lik = j.at("log_likelihood").get<double>();
    fit.aic = j.at("aic").get<double>();
    fit.n_obs = j.at("n_obs").get<std::size_t>();
    fit.converged = j.at("converged").get<bool>();
    fit.n_iterations = j.at("n_iterations").get<int>();
    fit.n_free_params = fit.transform.n_free();
    fit.regressor = j.value("regressor", "");
    if (j.contains("window_start")) {
        fit.window_start = parse_year_month(j.at("window_start").get<std::string>());
    }
    if (j.contains("window_end")) {
        fit.window_end = parse_year_month(j.at("window_end").get<std::string>());
    }
    return fit;
}

std::string fit_to_text(const FitResult& fit) {
    const std::vector<double> values = free_param_values(fit.params, fit.transform);
    std::ostringstream os;
    os << "Model fit (" << (fit.regressor.empty() ? "regressor" : fit.regressor) << ")\n";
    os << pad("Para.", 8) << pad("Val.", 14) << pad("Std.", 14) << "t stat.\n";
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        os << pad(fit.param_names[i], 8) << pad(fixed(values[i], 4), 14);
        if (fit.se_available) {
            os << pad(scientific(fit.std_errors[i]), 14)
               << fixed(fit.t_stats[i], 2) << stars(fit.t_stats[i]);
        } else {
            os << pad("n/a", 14) << "n/a";
        }
        os << "\n";
    }
    os << "AIC      " << fixed(fit.aic, 4) << "\n";
    os << "logL     " << fixed(fit.log_lik, 4) << "\n";
    os << "n_obs    " << fit.n_obs << "\n";
    os << "converged " << (fit.converged ? "yes" : "no") << " (" << fit.n_iterations
       << " iterations)\n";
    return os.str();
}

namespace {
const char* sample_name(SampleTag tag) {
    return tag == SampleTag::full_sample ? "full_sample" : "out_of_sample";
}
}  // namespace

json losses_to_json(const LossReport& report) {
    return json{
        {"sample", sample_name(report.sample)}, {"rmse", report.rmse}, {"rmsd", report.rmsd},
        {"rmae", report.rmae},                  {"rmad", report.rmad}, {"T", report.T},
    };
}

std::string losses_to_csv(const LossReport& report) {
    return losses_to_csv(std::vector<LossReport>{report});
}

std::string losses_to_csv(const std::vector<LossReport>& reports) {
    std::string out = "sample,rmse,rmsd,rmae,rmad,T\n";
    for (const auto& r : reports) {
        out += std::string(sample_name(r.sample)) + "," + csv::format_double(r.rmse) + "," +
               csv::format_double(r.rmsd) + "," + csv::format_double(r.rmae) + "," +
               csv::format_double(r.rmad) + "," + std::to_string(r.T) + "\n";
    }
    return out;
}

json protocol_to_json(const ProtocolResult& result) {
    json j{
        {"report", "protocol"},
        {"fit", fit_to_json(result.fit)},
        {"in_sample", losses_to_json(result.in_sample)},
        {"excluded_periods", result.excluded_periods},
    };
    if (result.out_of_sample) {
        j["out_of_sample"] = losses_to_json(*result.out_of_sample);
    }
    return j;
}

std::string protocol_to_text(const ProtocolResult& result) {
    std::ostringstream os;
    os << fit_to_text(result.fit) << "\n";
    os << pad("Sample", 16) << pad("RMSE", 13) << pad("RMSD", 13) << pad("RMAE", 13)
       << pad("RMAD", 13) << "T\n";
    const auto loss_row = [&](const LossReport& r) {
        os << pad(sample_name(r.sample), 16) << pad(scientific(r.rmse), 13)
           << pad(scientific(r.rmsd), 13) << pad(scientific(r.rmae), 13)
           << pad(scientific(r.rmad), 13) << r.T << "\n";
    };
    loss_row(result.in_sample);
    if (result.out_of_sample) loss_row(*result.out_of_sample);
    return os.str();
}

json comparison_to_json(const std::vector<ComparisonEntry>& entries) {
    json models = json::array();
    std::string best_label;
    double best_rmse = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        json m{{"label", e.label}, {"protocol", protocol_to_json(e.result)}};
        models.push_back(std::move(m));
        if (e.result.out_of_sample && e.result.out_of_sample->rmse < best_rmse) {
            best_rmse = e.result.out_of_sample->rmse;
            best_label = e.label;
        }
    }
    json j{{"report", "comparison"}, {"models", models}};
    if (!best_label.empty()) j["lowest_out_of_sample_rmse"] = best_label;
    return j;
}

std::string comparison_to_text(const std::vector<ComparisonEntry>& entries) {
    std::ostringstream os;
    os << pad("Model", 14) << pad("Sample", 16) << pad("RMSE", 13) << pad("RMSD", 13)
       << pad("RMAE", 13) << pad("RMAD", 13) << "T\n";
    std::string best_label;
    double best_rmse = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        const auto loss_row = [&](const LossReport& r) {
            os << pad(e.label, 14) << pad(sample_name(r.sample), 16) << pad(scientific(r.rmse), 13)
               << pad(scientific(r.rmsd), 13) << pad(scientific(r.rmae), 13)
               << pad(scientific(r.rmad), 13) << r.T << "\n";
        };
        loss_row(e.result.in_sample);
        if (e.result.out_of_sample) {
            loss_row(*e.result.out_of_sample);
            if (e.result.out_of_sample->rmse < best_rmse) {
                best_rmse = e.result.out_of_sample->rmse;
                best_label = e.label;
            }
        }
    }
    if (!best_label.empty()) {
        os << "lowest out-of-sample RMSE: " << best_label << "\n";
    }
    return os.str();
}

std::string forecast_to_csv(const ForecastSeries& fc) {
    std::string out = "date,predicted_variance,actual_proxy\n";
    for (std::size_t i = 0; i < fc.size(); ++i) {
        out += to_string(fc.dates[i]) + "," + csv::format_double(fc.predicted_variance[i]) + "," +
               csv::format_double(fc.actual_proxy[i]) + "\n";
    }
    return out;
}

ForecastSeries forecast_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    ForecastSeries fc;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 || line.empty()) continue;
        std::istringstream cells(line);
        std::string date_s, pred_s, actual_s;
        if (!std::getline(cells, date_s, ',') || !std::getline(cells, pred_s, ',') ||
            !std::getline(cells, actual_s)) {
            throw MalformedRow("forecast csv", line_no, "expected 3 columns");
        }
        fc.dates.push_back(parse_date(date_s));
        fc.predicted_variance.push_back(std::stod(pred_s));
        fc.actual_proxy.push_back(std::stod(actual_s));
    }
    return fc;
}

std::string weights_to_csv(const WeightVector& weights) {
    std::string out = "lag,weight\n";
    for (std::size_t k = 0; k < weights.size(); ++k) {
        out += std::to_string(k + 1) + "," + csv::format_double(weights.weights[k]) + "\n";
    }
    return out;
}

json index_to_json(const GlobalIndexResult& result, const std::vector<std::string>& countries) {
    json loadings = json::object();
    for (std::size_t i = 0; i < countries.size(); ++i) {
        loadings[countries[i]] = result.loadings[i];
    }
    return json{
        {"report", "global_index"},
        {"explained_variance", result.explained_variance},
        {"dropped_months", result.dropped_months},
        {"loadings", loadings},
        {"n_months", result.index.size()},
    };
}

}  // namespace gmidas::report
