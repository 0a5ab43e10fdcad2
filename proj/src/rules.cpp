#include <algorithm>
#include <cmath>

#include "benqc/learn_math.hpp"
#include "benqc/rng.hpp"
#include "learners_impl.hpp"

namespace benqc {

namespace {

constexpr std::size_t kMaxConditions = 32;
constexpr std::size_t kMaxRulesPerClass = 128;

bool rule_matches(const std::vector<RiCondition>& conditions, const SparseVector& vec) {
    for (const RiCondition& c : conditions)
        if (vec.get(c.column) < c.threshold) return false;
    return true;
}

struct Coverage {
    double pos = 0.0;
    double neg = 0.0;
};

Coverage coverage_of(const std::vector<RiCondition>& conditions, const Dataset& data,
                     const std::vector<std::uint32_t>& rows, int positive_class) {
    Coverage cov;
    for (std::uint32_t row : rows) {
        if (!rule_matches(conditions, data.vectors[row])) continue;
        (data.labels[row] == positive_class ? cov.pos : cov.neg) += 1.0;
    }
    return cov;
}

double precision_of(const Coverage& cov) {
    const double n = cov.pos + cov.neg;
    return n > 0.0 ? cov.pos / n : 0.0;
}

}  // namespace

bool RiRule::matches(const SparseVector& vec) const { return rule_matches(conditions, vec); }

RiRule ri_grow_rule(const Dataset& data, const std::vector<std::uint32_t>& rows, int positive_class) {
    RiRule rule;
    rule.label = positive_class;
    std::vector<std::uint32_t> covered = rows;

    while (rule.conditions.size() < kMaxConditions) {
        double p0 = 0.0, n0 = 0.0;
        for (std::uint32_t row : covered) (data.labels[row] == positive_class ? p0 : n0) += 1.0;
        if (n0 == 0.0 || p0 == 0.0) break;

        // Candidate conditions x[col] >= t, with t the midpoints between
        // consecutive distinct values among currently covered rows; the
        // lowest column then lowest threshold wins gain ties.
        double best_gain = 0.0;
        std::optional<RiCondition> best;
        for (std::uint32_t col = 0; col < data.dim; ++col) {
            std::vector<std::pair<double, bool>> vals;  // (value, is_positive)
            vals.reserve(covered.size());
            for (std::uint32_t row : covered)
                vals.emplace_back(data.vectors[row].get(col), data.labels[row] == positive_class);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (vals.front().first == vals.back().first) continue;

            // Sweep thresholds from high to low, accumulating covered counts.
            double p = 0.0, n = 0.0;
            std::size_t i = vals.size();
            while (i > 0) {
                const double value = vals[i - 1].first;
                while (i > 0 && vals[i - 1].first == value) {
                    (vals[i - 1].second ? p : n) += 1.0;
                    --i;
                }
                if (i == 0) break;  // threshold below the minimum covers everything
                const double threshold = (vals[i - 1].first + value) / 2.0;
                const double gain = foil_gain(p, n, p0, n0);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = RiCondition{col, threshold};
                }
            }
        }
        if (!best) break;

        rule.conditions.push_back(*best);
        std::vector<std::uint32_t> next;
        for (std::uint32_t row : covered)
            if (data.vectors[row].get(best->column) >= best->threshold) next.push_back(row);
        covered = std::move(next);
    }
    return rule;
}

RiRule ri_prune_rule(RiRule rule, const Dataset& data, const std::vector<std::uint32_t>& rows,
                     int positive_class) {
    if (rows.empty()) return rule;
    while (rule.conditions.size() > 1) {
        const double current = precision_of(coverage_of(rule.conditions, data, rows, positive_class));
        std::vector<RiCondition> truncated(rule.conditions.begin(), rule.conditions.end() - 1);
        const double pruned = precision_of(coverage_of(truncated, data, rows, positive_class));
        if (pruned >= current) rule.conditions.pop_back();
        else break;
    }
    return rule;
}

namespace detail {

RiModel train_ri(const LearnerSpec& spec, const Dataset& data) {
    const int num_classes = data.num_classes;

    std::vector<double> class_counts(num_classes, 0.0);
    for (int label : data.labels) class_counts[label] += 1.0;

    // Classes ordered by increasing frequency; the most frequent becomes the
    // default and gets no rules.
    std::vector<int> order(num_classes);
    for (int c = 0; c < num_classes; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return class_counts[a] < class_counts[b]; });

    RiModel model;
    model.default_label = order.back();

    Rng rng = Rng(spec.seed).split("ri");
    std::vector<std::uint32_t> remaining;
    for (std::uint32_t i = 0; i < data.size(); ++i) remaining.push_back(i);

    for (std::size_t oi = 0; oi + 1 < order.size(); ++oi) {
        const int cls = order[oi];
        if (class_counts[cls] == 0.0) continue;

        for (std::size_t guard = 0; guard < kMaxRulesPerClass; ++guard) {
            double pos_left = 0.0;
            for (std::uint32_t row : remaining) pos_left += data.labels[row] == cls ? 1.0 : 0.0;
            if (pos_left < static_cast<double>(spec.ri_min_coverage)) break;

            // Fresh seeded grow/prune split of the remaining instances.
            std::vector<std::uint32_t> shuffled = remaining;
            rng.shuffle(shuffled);
            const std::size_t grow_n = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(spec.ri_grow_fraction * static_cast<double>(shuffled.size()))));
            std::vector<std::uint32_t> grow(shuffled.begin(), shuffled.begin() + std::min(grow_n, shuffled.size()));
            std::vector<std::uint32_t> prune(shuffled.begin() + std::min(grow_n, shuffled.size()), shuffled.end());

            RiRule rule = ri_grow_rule(data, grow, cls);
            if (rule.conditions.empty()) break;
            rule = ri_prune_rule(std::move(rule), data, prune, cls);

            const Coverage cov = coverage_of(rule.conditions, data, remaining, cls);
            if (cov.pos < static_cast<double>(spec.ri_min_coverage) || precision_of(cov) <= 0.5) break;

            model.rules.push_back(rule);
            std::vector<std::uint32_t> next;
            for (std::uint32_t row : remaining)
                if (!rule.matches(data.vectors[row])) next.push_back(row);
            remaining = std::move(next);
            if (remaining.empty()) break;
        }
        if (remaining.empty()) break;
    }
    return model;
}

Prediction predict_ri(const RiModel& m, int num_classes, const SparseVector& vec) {
    int label = m.default_label;
    for (const RiRule& rule : m.rules) {
        if (rule.matches(vec)) {
            label = rule.label;
            break;
        }
    }
    std::vector<double> scores(num_classes, 0.0);
    scores[label] = 1.0;
    return make_prediction(std::move(scores));
}

}  // namespace detail

}  // namespace benqc
