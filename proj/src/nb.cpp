#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "learners_impl.hpp"

namespace benqc {

namespace {

constexpr double kDensityFloor = 1e-12;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649346576659806;

bool is_numeric_column(const std::vector<std::uint32_t>& numeric, std::uint32_t col) {
    return std::binary_search(numeric.begin(), numeric.end(), col);
}

double kde_evaluate(const NbModel::Kde& kde, double value) {
    if (kde.values.empty() || kde.weight_total <= 0.0) return kDensityFloor;
    const double h = kde.bandwidth;
    double density = 0.0;
    for (std::size_t i = 0; i < kde.values.size(); ++i) {
        const double z = (value - kde.values[i]) / h;
        density += kde.weights[i] * kInvSqrt2Pi * std::exp(-0.5 * z * z) / h;
    }
    density /= kde.weight_total;
    return std::max(density, kDensityFloor);
}

}  // namespace

namespace detail {

NbModel train_nb(const LearnerSpec& spec, const Dataset& data, bool kernel) {
    const std::size_t n = data.size();
    const int num_classes = data.num_classes;
    const std::vector<double> eff = effective_weights(data);

    NbModel m;
    m.alpha = spec.nb_alpha;
    m.kernel = kernel;
    m.class_totals.assign(num_classes, 0.0);
    m.count_sums.assign(num_classes, 0.0);
    m.feature_counts.resize(num_classes);
    if (kernel) m.numeric_columns = data.numeric_columns;
    m.count_column_total = data.dim - static_cast<std::uint32_t>(m.numeric_columns.size());

    std::vector<std::map<std::uint32_t, double>> counts(num_classes);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = data.labels[i];
        m.class_totals[c] += eff[i];
        for (const auto& [col, value] : data.vectors[i].entries) {
            if (kernel && is_numeric_column(m.numeric_columns, col)) continue;
            counts[c][col] += eff[i] * value;
            m.count_sums[c] += eff[i] * value;
        }
    }
    for (double w : m.class_totals) m.total_weight += w;
    for (int c = 0; c < num_classes; ++c)
        m.feature_counts[c].assign(counts[c].begin(), counts[c].end());

    if (kernel) {
        m.kde.resize(num_classes);
        for (int c = 0; c < num_classes; ++c) {
            m.kde[c].resize(m.numeric_columns.size());
            for (std::size_t k = 0; k < m.numeric_columns.size(); ++k) {
                const std::uint32_t col = m.numeric_columns[k];
                NbModel::Kde& kde = m.kde[c][k];
                for (std::size_t i = 0; i < n; ++i) {
                    if (data.labels[i] != c) continue;
                    kde.values.push_back(data.vectors[i].get(col));
                    kde.weights.push_back(eff[i]);
                    kde.weight_total += eff[i];
                }
                if (kde.values.empty()) {
                    kde.bandwidth = spec.kde_bandwidth_floor;
                    continue;
                }
                // Silverman's rule over the class's values, floored.
                double mean = 0.0;
                for (std::size_t i = 0; i < kde.values.size(); ++i)
                    mean += kde.weights[i] * kde.values[i];
                mean /= kde.weight_total;
                double var = 0.0;
                for (std::size_t i = 0; i < kde.values.size(); ++i) {
                    const double d = kde.values[i] - mean;
                    var += kde.weights[i] * d * d;
                }
                var /= kde.weight_total;
                const double sigma = std::sqrt(std::max(var, 0.0));
                const double count = static_cast<double>(kde.values.size());
                kde.bandwidth = std::max(1.06 * sigma * std::pow(count, -0.2), spec.kde_bandwidth_floor);
            }
        }
    }
    return m;
}

Prediction predict_nb(const NbModel& m, int num_classes, const SparseVector& vec) {
    std::vector<double> log_scores(num_classes, -std::numeric_limits<double>::infinity());
    const double vocab = static_cast<double>(m.count_column_total);
    for (int c = 0; c < num_classes; ++c) {
        if (m.class_totals[c] <= 0.0) continue;  // class absent from training
        double s = std::log(m.class_totals[c] / m.total_weight);
        const double denom = std::log(m.alpha * vocab + m.count_sums[c]);
        const auto& counts = m.feature_counts[c];
        for (const auto& [col, value] : vec.entries) {
            if (m.kernel && is_numeric_column(m.numeric_columns, col)) continue;
            auto it = std::lower_bound(counts.begin(), counts.end(), col,
                                       [](const auto& e, std::uint32_t k) { return e.first < k; });
            const double count = it != counts.end() && it->first == col ? it->second : 0.0;
            if (m.alpha + count <= 0.0) {  // unsmoothed zero likelihood
                s = -std::numeric_limits<double>::infinity();
                break;
            }
            s += value * (std::log(m.alpha + count) - denom);
        }
        if (m.kernel) {
            for (std::size_t k = 0; k < m.numeric_columns.size(); ++k)
                s += std::log(kde_evaluate(m.kde[c][k], vec.get(m.numeric_columns[k])));
        }
        log_scores[c] = s;
    }

    // Softmax in log space.
    double max_log = -std::numeric_limits<double>::infinity();
    for (double s : log_scores) max_log = std::max(max_log, s);
    std::vector<double> scores(num_classes, 0.0);
    double total = 0.0;
    if (std::isinf(max_log)) {
        // Every class has zero likelihood (possible with alpha = 0): the
        // posterior is undefined, so fall back to the class priors.
        for (int c = 0; c < num_classes; ++c) {
            scores[c] = m.class_totals[c];
            total += scores[c];
        }
    } else {
        for (int c = 0; c < num_classes; ++c) {
            if (std::isinf(log_scores[c]) && log_scores[c] < 0) continue;
            scores[c] = std::exp(log_scores[c] - max_log);
            total += scores[c];
        }
    }
    for (double& s : scores) s /= total;
    return make_prediction(std::move(scores));
}

}  // namespace detail

double kde_density(const Model& model, int class_index, std::uint32_t column, double value) {
    if (!std::holds_alternative<NbModel>(model.params))
        throw Error("kde_density requires a k-NB model");
    const NbModel& m = std::get<NbModel>(model.params);
    if (!m.kernel) throw Error("kde_density requires a k-NB model");
    auto it = std::find(m.numeric_columns.begin(), m.numeric_columns.end(), column);
    if (it == m.numeric_columns.end()) throw Error("column is not density-estimated");
    if (class_index < 0 || class_index >= model.num_classes) throw Error("class index out of range");
    return kde_evaluate(m.kde[class_index][static_cast<std::size_t>(it - m.numeric_columns.begin())], value);
}

}  // namespace benqc
