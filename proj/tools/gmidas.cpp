// gmidas — mixed-frequency volatility modeling CLI.
//
// Subcommands: stats, weights, fit, forecast, evaluate, protocol, compare,
// simulate, build-index. Reports are JSON by default (--format text for
// aligned tables); all file outputs are written atomically.

#include "gmidas/csv.hpp"
#include "gmidas/errors.hpp"
#include "gmidas/estimate.hpp"
#include "gmidas/forecast.hpp"
#include "gmidas/index_builder.hpp"
#include "gmidas/model.hpp"
#include "gmidas/report.hpp"
#include "gmidas/stats.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNonConverged = 4;

// flat-key JSON config; CLI flags override file values
struct RunConfig {
    std::string daily_path;
    std::string kind = "return";  // price | return
    std::string regressor = "rv"; // rv | file
    std::string monthly_path;
    int n_lags = 24;
    std::string window_preset = "paper-2008-2015";
    std::string estimation_start, estimation_end;
    std::string oos_start, oos_end;
    bool fix_omega1 = true;
    bool free_omega1 = false;
    bool exp_link = false;
    int max_iterations = 5000;
    bool allow_nonconverged = false;
    std::uint64_t seed = 1;
    std::string format = "json";  // json | text
    std::string out_path;         // empty = stdout
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gmidas::InvalidConfig("cannot open config file " + path);
    json j = json::parse(in);
    cfg.daily_path = j.value("daily", cfg.daily_path);
    cfg.kind = j.value("kind", cfg.kind);
    cfg.regressor = j.value("regressor", cfg.regressor);
    cfg.monthly_path = j.value("monthly", cfg.monthly_path);
    cfg.n_lags = j.value("n_lags", cfg.n_lags);
    cfg.window_preset = j.value("window_preset", cfg.window_preset);
    cfg.estimation_start = j.value("estimation_start", cfg.estimation_start);
    cfg.estimation_end = j.value("estimation_end", cfg.estimation_end);
    cfg.oos_start = j.value("oos_start", cfg.oos_start);
    cfg.oos_end = j.value("oos_end", cfg.oos_end);
    cfg.free_omega1 = j.value("free_omega1", cfg.free_omega1);
    cfg.exp_link = j.value("exp_link", cfg.exp_link);
    cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
    cfg.allow_nonconverged = j.value("allow_nonconverged", cfg.allow_nonconverged);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.format = j.value("format", cfg.format);
    cfg.out_path = j.value("out", cfg.out_path);
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
    const std::string payload = cfg.format == "text" ? text : j.dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::cout << payload;
    } else {
        gmidas::csv::atomic_write_text(cfg.out_path, payload);
    }
}

gmidas::SeriesKind parse_kind(const std::string& kind) {
    if (kind == "price") return gmidas::SeriesKind::price;
    if (kind == "return") return gmidas::SeriesKind::log_return;
    throw gmidas::InvalidConfig("kind must be 'price' or 'return', got '" + kind + "'");
}

// Loads the daily file and converts prices to log returns when asked to.
gmidas::DailySeries load_returns(const RunConfig& cfg) {
    if (cfg.daily_path.empty()) throw gmidas::InvalidConfig("--daily is required");
    auto series = gmidas::csv::load_daily_series(cfg.daily_path, parse_kind(cfg.kind));
    if (series.kind == gmidas::SeriesKind::price) {
        return gmidas::compute_log_returns(series);
    }
    return series;
}

gmidas::LowFrequencySeries load_regressor(const RunConfig& cfg,
                                          const gmidas::DailySeries& returns) {
    if (cfg.regressor == "rv") {
        return gmidas::realized_volatility(returns);
    }
    if (cfg.regressor == "file") {
        if (cfg.monthly_path.empty()) {
            throw gmidas::InvalidConfig("--regressor file requires --monthly");
        }
        return gmidas::csv::load_monthly_series(cfg.monthly_path);
    }
    throw gmidas::InvalidConfig("regressor must be 'rv' or 'file', got '" + cfg.regressor + "'");
}

gmidas::WindowConfig resolve_window(const RunConfig& cfg) {
    gmidas::WindowConfig w;
    w.n_lags = cfg.n_lags;
    if (cfg.window_preset == "paper-2008-2015") {
        // five-year estimation window, one out-of-sample year, two years of lags
        w.estimation_start = {2010, 1};
        w.estimation_end = {2014, 9};
        w.out_of_sample_start = {2014, 10};
        w.out_of_sample_end = {2015, 9};
    } else if (!cfg.window_preset.empty() && cfg.window_preset != "none") {
        throw gmidas::InvalidConfig("unknown window preset '" + cfg.window_preset + "'");
    }
    if (!cfg.estimation_start.empty()) w.estimation_start = gmidas::parse_year_month(cfg.estimation_start);
    if (!cfg.estimation_end.empty()) w.estimation_end = gmidas::parse_year_month(cfg.estimation_end);
    if (!cfg.oos_start.empty()) w.out_of_sample_start = gmidas::parse_year_month(cfg.oos_start);
    if (!cfg.oos_end.empty()) w.out_of_sample_end = gmidas::parse_year_month(cfg.oos_end);
    return w;
}

gmidas::FitOptions fit_options(const RunConfig& cfg) {
    gmidas::FitOptions opt;
    opt.transform.fix_omega1 = !cfg.free_omega1;
    opt.link = cfg.exp_link ? gmidas::LongRunLink::exponential : gmidas::LongRunLink::level;
    opt.simplex.max_iterations = cfg.max_iterations;
    return opt;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const gmidas::NoFeasibleStart*>(&e) ||
        dynamic_cast<const gmidas::InfeasibleParams*>(&e) ||
        dynamic_cast<const gmidas::NonPositiveTau*>(&e)) {
        return kExitInfeasible;
    }
    if (dynamic_cast<const gmidas::NonConvergence*>(&e)) return kExitNonConverged;
    return kExitConfig;
}

// --- subcommand bodies ---

int cmd_stats(const RunConfig& cfg, const std::vector<std::string>& monthly_paths) {
    std::vector<gmidas::report::StatsColumn> columns;
    const auto add_column = [&](const std::string& label, std::span<const double> values) {
        gmidas::report::StatsColumn col;
        col.label = label;
        col.moments = gmidas::stats::describe(values);
        col.jarque_bera = gmidas::stats::jarque_bera(values);
        col.adf = gmidas::stats::adf_test(values);
        columns.push_back(std::move(col));
    };

    if (!cfg.daily_path.empty()) {
        const auto returns = load_returns(cfg);
        add_column(cfg.kind == "price" ? "returns" : "daily", returns.values);
    }
    for (const auto& path : monthly_paths) {
        const auto series = gmidas::csv::load_monthly_series(path);
        add_column(series.label, series.values);
    }
    if (columns.empty()) {
        throw gmidas::InvalidConfig("stats: provide --daily and/or --monthly inputs");
    }
    emit(cfg, gmidas::report::stats_to_json(columns), gmidas::report::stats_to_text(columns));
    return kExitOk;
}

int cmd_weights(const RunConfig& cfg, int n_lags, double omega1, double omega2) {
    const auto wv = gmidas::beta_weights(n_lags, omega1, omega2);
    const std::string text = gmidas::report::weights_to_csv(wv);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        gmidas::csv::atomic_write_text(cfg.out_path, text);
    }
    return kExitOk;
}

int cmd_fit(const RunConfig& cfg) {
    const auto returns = load_returns(cfg);
    const auto regressor = load_regressor(cfg, returns);
    const auto window = resolve_window(cfg);
    const auto daily =
        gmidas::slice_months(returns, window.estimation_start, window.estimation_end);
    const auto panel = gmidas::align_panel(daily, regressor, cfg.n_lags);
    auto fit = gmidas::fit(panel, fit_options(cfg));
    if (!fit.converged && !cfg.allow_nonconverged) {
        throw gmidas::NonConvergence("fit did not converge (rerun with --allow-nonconverged "
                                     "to emit the report anyway)");
    }
    emit(cfg, gmidas::report::fit_to_json(fit), gmidas::report::fit_to_text(fit));
    return kExitOk;
}

int cmd_forecast(const RunConfig& cfg, const std::string& fit_path,
                 const std::string& forecast_csv) {
    std::ifstream in(fit_path);
    if (!in) throw gmidas::InvalidConfig("cannot open fit report " + fit_path);
    const auto fit = gmidas::report::fit_from_json(json::parse(in));

    const auto returns = load_returns(cfg);
    const auto regressor = load_regressor(cfg, returns);
    const auto window = resolve_window(cfg);
    const auto daily = gmidas::slice_months(
        returns, window.estimation_start,
        window.has_out_of_sample() ? window.out_of_sample_end : window.estimation_end);
    const auto panel = gmidas::align_panel(daily, regressor, cfg.n_lags);

    const auto fc = gmidas::forecast_one_step(
        fit, panel, {window.out_of_sample_start, window.out_of_sample_end});
    const auto losses = gmidas::evaluate(fc, gmidas::SampleTag::out_of_sample);

    if (!forecast_csv.empty()) {
        gmidas::csv::atomic_write_text(forecast_csv, gmidas::report::forecast_to_csv(fc));
    }
    emit(cfg, gmidas::report::losses_to_json(losses), gmidas::report::losses_to_csv(losses));
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& forecast_csv) {
    std::ifstream in(forecast_csv);
    if (!in) throw gmidas::InvalidConfig("cannot open forecast csv " + forecast_csv);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto fc = gmidas::report::forecast_from_csv_text(text);
    const auto losses = gmidas::evaluate(fc);
    emit(cfg, gmidas::report::losses_to_json(losses), gmidas::report::losses_to_csv(losses));
    return kExitOk;
}

gmidas::ProtocolResult run_protocol_for(const RunConfig& cfg) {
    const auto returns = load_returns(cfg);
    const auto regressor = load_regressor(cfg, returns);
    const auto window = resolve_window(cfg);
    auto result = gmidas::run_protocol(returns, regressor, window, fit_options(cfg));
    if (!result.fit.converged && !cfg.allow_nonconverged) {
        throw gmidas::NonConvergence("protocol fit did not converge");
    }
    return result;
}

int cmd_protocol(const RunConfig& cfg, const std::string& forecast_csv,
                 const std::string& losses_csv) {
    const auto result = run_protocol_for(cfg);
    if (!forecast_csv.empty()) {
        gmidas::csv::atomic_write_text(forecast_csv,
                                       gmidas::report::forecast_to_csv(result.oos_forecasts));
    }
    if (!losses_csv.empty()) {
        std::vector<gmidas::LossReport> rows{result.in_sample};
        if (result.out_of_sample) rows.push_back(*result.out_of_sample);
        gmidas::csv::atomic_write_text(losses_csv, gmidas::report::losses_to_csv(rows));
    }
    emit(cfg, gmidas::report::protocol_to_json(result),
         gmidas::report::protocol_to_text(result));
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, const std::string& monthly_b) {
    // model A: the configured regressor; model B: the second monthly file
    gmidas::report::ComparisonEntry a;
    a.label = cfg.regressor == "rv" ? "rv" : cfg.monthly_path;
    a.result = run_protocol_for(cfg);

    RunConfig cfg_b = cfg;
    cfg_b.regressor = "file";
    cfg_b.monthly_path = monthly_b;
    gmidas::report::ComparisonEntry b;
    b.label = monthly_b;
    b.result = run_protocol_for(cfg_b);

    std::vector<gmidas::report::ComparisonEntry> entries;
    entries.push_back(std::move(a));
    entries.push_back(std::move(b));
    emit(cfg, gmidas::report::comparison_to_json(entries),
         gmidas::report::comparison_to_text(entries));
    return kExitOk;
}

struct SimulateArgs {
    int months = 93;
    int days = 22;
    std::string start = "2008-01";
    // persistent-volatility operating point as the default data-generating process
    double mu = 0.0006;
    double alpha = 0.1221;
    double beta = 0.8608;
    double theta = 0.1855;
    double omega2 = 2.8589;
    double m = 0.0184;
    double regressor_level = 0.1;
    double regressor_rho = 0.85;
    double regressor_sigma = 0.5;
    std::string daily_out = "simulated_daily.csv";
    std::string monthly_out = "simulated_monthly.csv";
};

int cmd_simulate(const RunConfig& cfg, const SimulateArgs& args) {
    if (args.months < 1) throw gmidas::InvalidConfig("--months must be >= 1");
    gmidas::ParameterSet params{args.mu,   args.alpha,  args.beta, args.theta,
                                1.0,       args.omega2, args.m};
    const gmidas::YearMonth first_sim = gmidas::parse_year_month(args.start);
    const gmidas::YearMonth reg_start = gmidas::add_months(first_sim, -cfg.n_lags);

    // separate stream for the regressor so it is independent of the shocks
    const auto regressor = gmidas::simulate_regressor_path(
        reg_start, args.months + cfg.n_lags, args.regressor_level, args.regressor_rho,
        args.regressor_sigma, cfg.seed ^ 0x9e3779b97f4a7c15ULL, "sim_regressor");
    const auto sim = gmidas::simulate(params, regressor, args.days, cfg.n_lags, cfg.seed);

    gmidas::csv::save_daily_series(args.daily_out, sim.daily);
    gmidas::csv::save_monthly_series(args.monthly_out, regressor);

    json j{
        {"report", "simulate"},
        {"daily", args.daily_out},
        {"monthly", args.monthly_out},
        {"n_days", sim.daily.size()},
        {"n_months", args.months},
        {"seed", cfg.seed},
    };
    emit(cfg, j, "wrote " + args.daily_out + " (" + std::to_string(sim.daily.size()) +
                     " rows) and " + args.monthly_out + "\n");
    return kExitOk;
}

int cmd_build_index(const RunConfig& cfg, const std::string& panel_path,
                    const std::string& index_out, const std::string& scaling_name) {
    const auto wide = gmidas::csv::load_wide_monthly_csv(panel_path);
    const auto panel = gmidas::make_index_panel(wide);
    gmidas::PanelScaling scaling;
    if (scaling_name == "standardize") {
        scaling = gmidas::PanelScaling::standardize;
    } else if (scaling_name == "center_only") {
        scaling = gmidas::PanelScaling::center_only;
    } else {
        throw gmidas::InvalidConfig("scaling must be 'standardize' or 'center_only'");
    }
    const auto result = gmidas::build_global_index(panel, scaling);
    if (!index_out.empty()) {
        gmidas::csv::save_monthly_series(index_out, result.index);
    }
    emit(cfg, gmidas::report::index_to_json(result, panel.countries),
         "explained variance: " + std::to_string(result.explained_variance) + ", dropped months: " +
             std::to_string(result.dropped_months) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GARCH-MIDAS mixed-frequency volatility toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    if (const char* env = std::getenv("GMIDAS_CONFIG")) config_path = env;

    app.add_option("--config", config_path, "JSON config file (flags override its values)");

    // shared options, attached per subcommand
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override its values)");
        sub->add_option("--daily", cfg.daily_path, "daily CSV (date,value)");
        sub->add_option("--kind", cfg.kind, "daily series kind: price | return");
        sub->add_option("--regressor", cfg.regressor, "rv | file");
        sub->add_option("--monthly", cfg.monthly_path, "monthly CSV (month,value)");
        sub->add_option("--lags,-K", cfg.n_lags, "number of monthly lags K");
        sub->add_option("--window-preset", cfg.window_preset, "paper-2008-2015 | none");
        sub->add_option("--estimation-start", cfg.estimation_start, "YYYY-MM");
        sub->add_option("--estimation-end", cfg.estimation_end, "YYYY-MM");
        sub->add_option("--oos-start", cfg.oos_start, "YYYY-MM");
        sub->add_option("--oos-end", cfg.oos_end, "YYYY-MM");
        sub->add_flag("--free-omega1", cfg.free_omega1, "estimate omega1 instead of pinning it");
        sub->add_flag("--exp-link", cfg.exp_link,
                      "exponential long-run link exp(m + theta * sum) instead of the level link");
        sub->add_option("--max-iterations", cfg.max_iterations, "simplex iteration cap");
        sub->add_flag("--allow-nonconverged", cfg.allow_nonconverged,
                      "emit reports from non-converged fits");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--format", cfg.format, "json | text");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    };

    auto* stats_cmd = app.add_subcommand("stats", "descriptive statistics and tests");
    std::vector<std::string> stats_monthly;
    stats_cmd->add_option("--monthly-series", stats_monthly,
                          "monthly CSVs to report alongside --daily");
    add_common(stats_cmd);

    auto* weights_cmd = app.add_subcommand("weights", "print Beta lag weights as CSV");
    int w_lags = 24;
    double w_omega1 = 1.0, w_omega2 = 3.0;
    weights_cmd->add_option("--n-lags", w_lags, "number of lags");
    weights_cmd->add_option("--omega1", w_omega1, "first shape parameter");
    weights_cmd->add_option("--omega2", w_omega2, "second shape parameter");
    add_common(weights_cmd);

    auto* fit_cmd = app.add_subcommand("fit", "estimate the model on the estimation window");
    add_common(fit_cmd);

    auto* forecast_cmd = app.add_subcommand("forecast", "one-step forecasts from a saved fit");
    std::string fit_path, forecast_out;
    forecast_cmd->add_option("--fit", fit_path, "fit report JSON")->required();
    forecast_cmd->add_option("--forecast-csv", forecast_out, "write the forecast series here");
    add_common(forecast_cmd);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "loss report for a forecast CSV");
    std::string eval_csv;
    evaluate_cmd->add_option("--forecast-csv", eval_csv, "forecast CSV to score")->required();
    add_common(evaluate_cmd);

    auto* protocol_cmd =
        app.add_subcommand("protocol", "fit, out-of-sample forecast, and loss evaluation");
    std::string protocol_forecast_out, protocol_losses_out;
    protocol_cmd->add_option("--forecast-csv", protocol_forecast_out,
                             "write out-of-sample forecasts here");
    protocol_cmd->add_option("--losses-csv", protocol_losses_out, "write the loss table here");
    add_common(protocol_cmd);

    auto* compare_cmd =
        app.add_subcommand("compare", "protocol twice: configured regressor vs a second file");
    std::string monthly_b;
    compare_cmd->add_option("--monthly-b", monthly_b, "second regressor CSV")->required();
    add_common(compare_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "write a simulated dataset");
    SimulateArgs sim_args;
    simulate_cmd->add_option("--months", sim_args.months, "simulated months");
    simulate_cmd->add_option("--days", sim_args.days, "trading days per month (<= 28)");
    simulate_cmd->add_option("--start", sim_args.start, "first simulated month YYYY-MM");
    simulate_cmd->add_option("--mu", sim_args.mu);
    simulate_cmd->add_option("--alpha", sim_args.alpha);
    simulate_cmd->add_option("--beta", sim_args.beta);
    simulate_cmd->add_option("--theta", sim_args.theta);
    simulate_cmd->add_option("--omega2", sim_args.omega2);
    simulate_cmd->add_option("--m", sim_args.m);
    simulate_cmd->add_option("--regressor-level", sim_args.regressor_level);
    simulate_cmd->add_option("--regressor-rho", sim_args.regressor_rho);
    simulate_cmd->add_option("--regressor-sigma", sim_args.regressor_sigma);
    simulate_cmd->add_option("--daily-out", sim_args.daily_out);
    simulate_cmd->add_option("--monthly-out", sim_args.monthly_out);
    add_common(simulate_cmd);

    auto* index_cmd = app.add_subcommand("build-index", "first-PC aggregate of a country panel");
    std::string panel_path, index_out, scaling_name = "standardize";
    index_cmd->add_option("--panel", panel_path, "wide CSV month,C1,C2,...")->required();
    index_cmd->add_option("--index-out", index_out, "write the index as monthly CSV");
    index_cmd->add_option("--scaling", scaling_name, "standardize | center_only");
    add_common(index_cmd);

    // config file is applied before flag parsing so flags win
    try {
        for (int i = 1; i + 1 < argc; ++i) {
            if (std::string_view(argv[i]) == "--config") config_path = argv[i + 1];
        }
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (*stats_cmd) return cmd_stats(cfg, stats_monthly);
        if (*weights_cmd) return cmd_weights(cfg, w_lags, w_omega1, w_omega2);
        if (*fit_cmd) return cmd_fit(cfg);
        if (*forecast_cmd) return cmd_forecast(cfg, fit_path, forecast_out);
        if (*evaluate_cmd) return cmd_evaluate(cfg, eval_csv);
        if (*protocol_cmd) return cmd_protocol(cfg, protocol_forecast_out, protocol_losses_out);
        if (*compare_cmd) return cmd_compare(cfg, monthly_b);
        if (*simulate_cmd) return cmd_simulate(cfg, sim_args);
        if (*index_cmd) return cmd_build_index(cfg, panel_path, index_out, scaling_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitConfig;
}
