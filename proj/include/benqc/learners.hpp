#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "benqc/features.hpp"

namespace benqc {

enum class LearnerKind : std::uint8_t { NB, KNB, RI, DT };

std::string_view to_string(LearnerKind k);
std::optional<LearnerKind> learner_kind_from_string(std::string_view s);

struct LearnerSpec {
    LearnerKind kind = LearnerKind::NB;
    std::uint64_t seed = 0;

    // NB / k-NB
    double nb_alpha = 1.0;
    double kde_bandwidth_floor = 1e-6;

    // RI (RIPPER-style sequential covering)
    int ri_min_coverage = 2;
    double ri_grow_fraction = 2.0 / 3.0;

    // DT (binary threshold splits, gain ratio)
    int dt_min_leaf = 2;
    int dt_max_depth = 32;

    LearnerSpec with_kind(LearnerKind k) const {
        LearnerSpec s = *this;
        s.kind = k;
        return s;
    }
    LearnerSpec with_seed(std::uint64_t sd) const {
        LearnerSpec s = *this;
        s.seed = sd;
        return s;
    }
};

struct Dataset {
    std::vector<SparseVector> vectors;
    std::vector<int> labels;  // 0 .. num_classes-1
    int num_classes = 0;
    std::uint32_t dim = 0;
    std::uint64_t space_hash = 0;
    std::vector<double> weights;  // empty = uniform; else non-negative, summing to 1
    std::vector<std::uint32_t> numeric_columns;  // sorted; density-estimated by k-NB

    std::size_t size() const { return vectors.size(); }
};

struct EmptyDataset : Error {
    EmptyDataset() : Error("training data is empty") {}
};
struct IndexMismatch : Error {
    IndexMismatch() : Error("vector feature space does not match the model's") {}
};

struct Prediction {
    int label = 0;                // argmax of scores, ties to the lowest index
    std::vector<double> scores;   // length K, non-negative, sums to 1
};

Prediction make_prediction(std::vector<double> scores);

// --- model parameter blocks ----------------------------------------------------

struct NbModel {
    double alpha = 1.0;
    bool kernel = false;  // k-NB: numeric columns use kernel density estimates
    std::vector<double> class_totals;  // effective instance mass per class
    double total_weight = 0.0;
    // Per class: sorted (column, effective count) over count-valued columns.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> feature_counts;
    std::vector<double> count_sums;  // per class, over count-valued columns
    std::uint32_t count_column_total = 0;  // vocabulary size for smoothing

    struct Kde {
        std::vector<double> values;   // training values (one per class instance)
        std::vector<double> weights;  // effective weights, parallel to values
        double weight_total = 0.0;
        double bandwidth = 0.0;
    };
    std::vector<std::uint32_t> numeric_columns;
    std::vector<std::vector<Kde>> kde;  // [class][numeric column position]
};

struct RiCondition {
    std::uint32_t column;
    double threshold;  // condition: x[column] >= threshold
};
struct RiRule {
    int label = 0;
    std::vector<RiCondition> conditions;
    bool matches(const SparseVector& vec) const;
};
struct RiModel {
    std::vector<RiRule> rules;  // ordered decision list
    int default_label = 0;
};

struct DtNode {
    std::int32_t left = -1;   // -1 marks a leaf
    std::int32_t right = -1;
    std::uint32_t column = 0;
    double threshold = 0.0;        // goes right when x[column] >= threshold
    std::vector<double> scores;    // leaves: class distribution
    bool is_leaf() const { return left < 0; }
};
struct DtModel {
    std::vector<DtNode> nodes;  // nodes[0] is the root
};

struct Model {
    LearnerKind kind = LearnerKind::NB;
    std::uint32_t dim = 0;
    std::uint64_t space_hash = 0;
    int num_classes = 0;
    std::variant<NbModel, RiModel, DtModel> params;
};

// --- training / prediction ------------------------------------------------------

// Deterministic under (spec, data). Weighted data is consumed natively by
// NB/k-NB and via a seeded weighted bootstrap for RI/DT; uniform weights are
// equivalent to no weights for every learner.
Model train(const LearnerSpec& spec, const Dataset& data);

Prediction predict(const Model& model, const SparseVector& vector);

// Posterior of an NB or k-NB model (the score vector of predict).
std::vector<double> nb_posterior(const Model& model, const SparseVector& vector);

// Gaussian KDE likelihood of `value` for a numeric column under a k-NB
// model, floored at 1e-12.
double kde_density(const Model& model, int class_index, std::uint32_t column, double value);

// --- training internals exposed for verification --------------------------------

struct DtSplit {
    std::uint32_t column;
    double threshold;
    double gain_ratio;
    double info_gain;
};
// Best (column, threshold) by gain ratio at a node; ties go to the lowest
// column then lowest threshold. Empty when no split keeps min_leaf on both
// sides.
std::optional<DtSplit> dt_choose_split(const Dataset& data, const std::vector<std::uint32_t>& rows,
                                       int min_leaf);

// Greedy FOIL-gain condition growth until the rule covers no negatives in
// `rows` or no condition has positive gain.
RiRule ri_grow_rule(const Dataset& data, const std::vector<std::uint32_t>& rows, int positive_class);
// Drops trailing conditions while precision on `rows` does not decrease.
RiRule ri_prune_rule(RiRule rule, const Dataset& data, const std::vector<std::uint32_t>& rows,
                     int positive_class);

// Seeded weighted bootstrap of n instances (used to consume instance weights
// for learners without native weighting).
Dataset resample_weighted(const Dataset& data, std::uint64_t seed);

// --- serialization ---------------------------------------------------------------

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

}  // namespace benqc
