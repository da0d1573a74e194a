#pragma once

#include "gmidas/forecast.hpp"
#include "gmidas/index_builder.hpp"
#include "gmidas/stats.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace gmidas::report {

using nlohmann::json;

/// One column of the descriptive-statistics report (one per input series).
struct StatsColumn {
    std::string label;
    stats::DescriptiveStats moments;
    stats::TestResult jarque_bera;
    stats::TestResult adf;
};

json stats_to_json(const std::vector<StatsColumn>& columns);
std::string stats_to_text(const std::vector<StatsColumn>& columns);

json fit_to_json(const FitResult& fit);
std::string fit_to_text(const FitResult& fit);
FitResult fit_from_json(const json& j);

json losses_to_json(const LossReport& report);
std::string losses_to_csv(const LossReport& report);
std::string losses_to_csv(const std::vector<LossReport>& reports);

json protocol_to_json(const ProtocolResult& result);
std::string protocol_to_text(const ProtocolResult& result);

struct ComparisonEntry {
    std::string label;
    ProtocolResult result;
};

json comparison_to_json(const std::vector<ComparisonEntry>& entries);
std::string comparison_to_text(const std::vector<ComparisonEntry>& entries);

std::string forecast_to_csv(const ForecastSeries& fc);
ForecastSeries forecast_from_csv_text(const std::string& text);

std::string weights_to_csv(const WeightVector& weights);

json index_to_json(const GlobalIndexResult& result, const std::vector<std::string>& countries);

/// Significance stars from an asymptotic-normal t statistic.
std::string stars(double t_stat);

}  // namespace gmidas::report
