#pragma once

#include "gmidas/csv.hpp"
#include "gmidas/series.hpp"

#include <string>
#include <vector>

namespace gmidas {

/// Complete-case panel of country-level monthly indexes.
struct IndexPanel {
    std::vector<YearMonth> months;
    std::vector<std::string> countries;
    std::vector<double> values;  // months x countries, row-major
    int n_dropped_months = 0;

    std::size_t n_months() const { return months.size(); }
    std::size_t n_countries() const { return countries.size(); }
    double at(std::size_t month, std::size_t country) const {
        return values[month * n_countries() + country];
    }
};

/// Drops months with any missing country value (counting them) and validates
/// the panel shape: at least 2 countries and 3 complete months.
IndexPanel make_index_panel(const csv::WidePanel& wide);

enum class PanelScaling { standardize, center_only };

struct GlobalIndexResult {
    LowFrequencySeries index;
    std::vector<double> loadings;      // per country, on the scaled panel
    double explained_variance = 0.0;   // share carried by the first component
    int dropped_months = 0;
};

/// First-principal-component aggregate of the panel. Columns are centered
/// (and scaled to unit variance under `standardize`); the component sign is
/// chosen so the mean loading is positive, falling back to the dominant
/// loading when the mean is zero; scores are affinely rescaled to the mean
/// and standard deviation of the cross-country average series.
GlobalIndexResult build_global_index(const IndexPanel& panel,
                                     PanelScaling scaling = PanelScaling::standardize);

}  // namespace gmidas
