#include <algorithm>
#include <cmath>

#include "benqc/learn_math.hpp"
#include "learners_impl.hpp"

namespace benqc {

namespace {

struct SplitSearch {
    const Dataset& data;
    const detail::ColumnView& view;
    int min_leaf;
    std::vector<std::uint8_t> member;  // row membership stamp, sized n

    std::optional<DtSplit> best_split(const std::vector<std::uint32_t>& rows,
                                      const std::vector<double>& node_hist) {
        const int num_classes = static_cast<int>(node_hist.size());
        const double node_n = static_cast<double>(rows.size());
        const double node_entropy = entropy_bits(node_hist);

        for (std::uint32_t row : rows) member[row] = 1;

        std::optional<DtSplit> best;
        std::vector<std::pair<double, int>> present;  // (value, label) of node rows with nonzero value
        std::vector<double> left(num_classes), right(num_classes);

        for (std::uint32_t col = 0; col < data.dim; ++col) {
            present.clear();
            std::vector<double> nonzero_hist(num_classes, 0.0);
            for (const auto& [row, value] : view.columns[col]) {
                if (!member[row]) continue;
                present.emplace_back(value, data.labels[row]);
                nonzero_hist[data.labels[row]] += 1.0;
            }
            const double zeros = node_n - static_cast<double>(present.size());
            if (present.empty()) continue;  // column constant (all zero) at this node
            std::sort(present.begin(), present.end());
            if (zeros == 0.0 && present.front().first == present.back().first) continue;

            // Left starts as the zero-valued rows; sweep distinct nonzero
            // values upward, moving each group from right to left.
            for (int c = 0; c < num_classes; ++c) {
                left[c] = node_hist[c] - nonzero_hist[c];
                right[c] = nonzero_hist[c];
            }
            double n_left = zeros;
            double prev_value = 0.0;
            std::size_t i = 0;
            while (i < present.size()) {
                if (n_left > 0.0) {
                    const double threshold = (prev_value + present[i].first) / 2.0;
                    const double n_right = node_n - n_left;
                    if (n_left >= min_leaf && n_right >= min_leaf) {
                        const double gain = node_entropy
                            - (n_left / node_n) * entropy_bits(left)
                            - (n_right / node_n) * entropy_bits(right);
                        const double si = split_info_bits(n_left, n_right);
                        const double ratio = si > 0.0 ? gain / si : 0.0;
                        if (!best || ratio > best->gain_ratio)
                            best = DtSplit{col, threshold, ratio, gain};
                    }
                }
                const double value = present[i].first;
                while (i < present.size() && present[i].first == value) {
                    left[present[i].second] += 1.0;
                    right[present[i].second] -= 1.0;
                    n_left += 1.0;
                    ++i;
                }
                prev_value = value;
            }
        }

        for (std::uint32_t row : rows) member[row] = 0;
        return best;
    }
};

}  // namespace

std::optional<DtSplit> dt_choose_split(const Dataset& data, const std::vector<std::uint32_t>& rows,
                                       int min_leaf) {
    const detail::ColumnView view = detail::ColumnView::build(data);
    int num_classes = data.num_classes;
    for (std::uint32_t row : rows) num_classes = std::max(num_classes, data.labels[row] + 1);
    std::vector<double> hist(num_classes, 0.0);
    for (std::uint32_t row : rows) hist[data.labels[row]] += 1.0;
    SplitSearch search{data, view, min_leaf, std::vector<std::uint8_t>(data.size(), 0)};
    return search.best_split(rows, hist);
}

namespace detail {

namespace {

std::int32_t grow_node(DtModel& model, SplitSearch& search, const Dataset& data,
                       std::vector<std::uint32_t> rows, int depth, const LearnerSpec& spec) {
    const int num_classes = data.num_classes;
    std::vector<double> hist(num_classes, 0.0);
    for (std::uint32_t row : rows) hist[data.labels[row]] += 1.0;

    const std::int32_t node_index = static_cast<std::int32_t>(model.nodes.size());
    model.nodes.emplace_back();

    auto make_leaf = [&]() {
        DtNode& node = model.nodes[node_index];
        node.left = node.right = -1;
        node.scores.assign(num_classes, 0.0);
        const double total = static_cast<double>(rows.size());
        for (int c = 0; c < num_classes; ++c) node.scores[c] = hist[c] / total;
        return node_index;
    };

    int populated = 0;
    for (int c = 0; c < num_classes; ++c) populated += hist[c] > 0.0 ? 1 : 0;
    if (populated <= 1 || depth >= spec.dt_max_depth ||
        rows.size() < static_cast<std::size_t>(2 * spec.dt_min_leaf))
        return make_leaf();

    const auto split = search.best_split(rows, hist);
    if (!split) return make_leaf();

    std::vector<std::uint32_t> left_rows, right_rows;
    for (std::uint32_t row : rows)
        (data.vectors[row].get(split->column) < split->threshold ? left_rows : right_rows).push_back(row);
    rows.clear();
    rows.shrink_to_fit();

    const std::int32_t left = grow_node(model, search, data, std::move(left_rows), depth + 1, spec);
    const std::int32_t right = grow_node(model, search, data, std::move(right_rows), depth + 1, spec);
    DtNode& node = model.nodes[node_index];
    node.column = split->column;
    node.threshold = split->threshold;
    node.left = left;
    node.right = right;
    return node_index;
}

}  // namespace

DtModel train_dt(const LearnerSpec& spec, const Dataset& data) {
    const ColumnView view = ColumnView::build(data);
    SplitSearch search{data, view, spec.dt_min_leaf, std::vector<std::uint8_t>(data.size(), 0)};
    DtModel model;
    std::vector<std::uint32_t> rows(data.size());
    for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i] = i;
    grow_node(model, search, data, std::move(rows), 0, spec);
    return model;
}

Prediction predict_dt(const DtModel& m, const SparseVector& vec) {
    const DtNode* node = &m.nodes.front();
    while (!node->is_leaf())
        node = &m.nodes[vec.get(node->column) < node->threshold ? node->left : node->right];
    return make_prediction(node->scores);
}

}  // namespace detail

}  // namespace benqc
