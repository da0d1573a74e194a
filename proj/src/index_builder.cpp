#include "gmidas/index_builder.hpp"

#include "gmidas/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace gmidas {

IndexPanel make_index_panel(const csv::WidePanel& wide) {
    IndexPanel panel;
    panel.countries = wide.columns;
    for (std::size_t r = 0; r < wide.rows.size(); ++r) {
        bool complete = true;
        for (double v : wide.rows[r]) {
            if (std::isnan(v)) {
                complete = false;
                break;
            }
        }
        if (!complete) {
            ++panel.n_dropped_months;
            continue;
        }
        if (!panel.months.empty() && !(panel.months.back() < wide.months[r])) {
            throw DuplicateDate("duplicate month " + to_string(wide.months[r]) +
                                " in the index panel");
        }
        panel.months.push_back(wide.months[r]);
        panel.values.insert(panel.values.end(), wide.rows[r].begin(), wide.rows[r].end());
    }
    if (panel.n_countries() < 2) {
        throw DegeneratePanel("index panel needs at least 2 countries");
    }
    if (panel.n_months() < 3) {
        throw DegeneratePanel("index panel needs at least 3 complete months (" +
                              std::to_string(panel.n_months()) + " after dropping gaps)");
    }
    return panel;
}

GlobalIndexResult build_global_index(const IndexPanel& panel, PanelScaling scaling) {
    const auto n_months = static_cast<Eigen::Index>(panel.n_months());
    const auto n_countries = static_cast<Eigen::Index>(panel.n_countries());
    if (n_countries < 2 || n_months < 3) {
        throw DegeneratePanel("index panel needs >= 2 countries and >= 3 months");
    }

    Eigen::MatrixXd data(n_months, n_countries);
    for (Eigen::Index r = 0; r < n_months; ++r) {
        for (Eigen::Index c = 0; c < n_countries; ++c) {
            data(r, c) = panel.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }

    // cross-country average of the raw panel anchors the output scale
    const Eigen::VectorXd raw_avg = data.rowwise().mean();
    const double avg_mean = raw_avg.mean();
    const double avg_sd =
        std::sqrt((raw_avg.array() - avg_mean).square().sum() / static_cast<double>(n_months - 1));

    const Eigen::RowVectorXd col_means = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - col_means;
    if (scaling == PanelScaling::standardize) {
        for (Eigen::Index c = 0; c < n_countries; ++c) {
            const double sd = std::sqrt(centered.col(c).squaredNorm() /
                                        static_cast<double>(n_months - 1));
            if (!(sd > 0.0)) {
                throw DegeneratePanel("zero-variance column '" +
                                      panel.countries[static_cast<std::size_t>(c)] + "'");
            }
            centered.col(c) /= sd;
        }
    }

    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(n_months - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw Error("build_global_index: eigensolver failed to converge");
    }

    // Eigen orders eigenvalues ascending; the first component is the last one
    Eigen::VectorXd loading = solver.eigenvectors().col(n_countries - 1);
    const double total_var = solver.eigenvalues().sum();
    if (!(total_var > 0.0)) {
        throw DegeneratePanel("panel has no variance after scaling");
    }
    const double explained = solver.eigenvalues()(n_countries - 1) / total_var;

    // sign convention: positive mean loading; ties resolve to the first
    // dominant-magnitude coordinate so antisymmetric panels stay deterministic
    double loading_sum = loading.sum();
    if (std::abs(loading_sum) < 1e-12) {
        const double max_mag = loading.cwiseAbs().maxCoeff();
        for (Eigen::Index c = 0; c < n_countries; ++c) {
            if (std::abs(loading(c)) >= (1.0 - 1e-9) * max_mag) {
                loading_sum = loading(c);
                break;
            }
        }
    }
    if (loading_sum < 0.0) loading = -loading;

    Eigen::VectorXd scores = centered * loading;
    const double score_mean = scores.mean();
    const double score_sd = std::sqrt((scores.array() - score_mean).square().sum() /
                                      static_cast<double>(n_months - 1));
    if (!(score_sd > 0.0)) {
        throw DegeneratePanel("first component has zero variance");
    }

    GlobalIndexResult result;
    result.dropped_months = panel.n_dropped_months;
    result.explained_variance = explained;
    result.loadings.assign(loading.data(), loading.data() + loading.size());
    result.index.label = "gepu";
    result.index.months = panel.months;
    // a degenerate cross-country average (e.g. columns canceling exactly)
    // leaves no scale to match; keep the raw component scale then
    const double rescale = avg_sd > 0.0 ? avg_sd / score_sd : 1.0;
    result.index.values.resize(panel.n_months());
    for (Eigen::Index r = 0; r < n_months; ++r) {
        result.index.values[static_cast<std::size_t>(r)] =
            avg_mean + (scores(r) - score_mean) * rescale;
    }
    // months may legitimately have interior gaps here (dropped incomplete
    // rows); the no-gap rule is enforced where the series enters the model
    return result;
}

}  // namespace gmidas
