#include "benqc/learners.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

#include "benqc/rng.hpp"
#include "learners_impl.hpp"

namespace benqc {

using nlohmann::json;

std::string_view to_string(LearnerKind k) {
    switch (k) {
        case LearnerKind::NB: return "nb";
        case LearnerKind::KNB: return "knb";
        case LearnerKind::RI: return "ri";
        case LearnerKind::DT: return "dt";
    }
    return "?";
}

std::optional<LearnerKind> learner_kind_from_string(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "nb") return LearnerKind::NB;
    if (lower == "knb" || lower == "k-nb" || lower == "knb") return LearnerKind::KNB;
    if (lower == "ri") return LearnerKind::RI;
    if (lower == "dt") return LearnerKind::DT;
    return std::nullopt;
}

Prediction make_prediction(std::vector<double> scores) {
    Prediction p;
    p.scores = std::move(scores);
    p.label = 0;
    for (std::size_t c = 1; c < p.scores.size(); ++c)
        if (p.scores[c] > p.scores[p.label]) p.label = static_cast<int>(c);
    return p;
}

namespace detail {

bool weights_are_uniform(const Dataset& data) {
    if (data.weights.empty()) return true;
    for (double w : data.weights)
        if (w != data.weights.front()) return false;
    return true;
}

std::vector<double> effective_weights(const Dataset& data) {
    const std::size_t n = data.size();
    if (weights_are_uniform(data)) return std::vector<double>(n, 1.0);
    std::vector<double> eff(n);
    for (std::size_t i = 0; i < n; ++i) eff[i] = data.weights[i] * static_cast<double>(n);
    return eff;
}

ColumnView ColumnView::build(const Dataset& data) {
    ColumnView view;
    view.columns.resize(data.dim);
    for (std::uint32_t row = 0; row < data.vectors.size(); ++row)
        for (const auto& [col, value] : data.vectors[row].entries)
            view.columns[col].emplace_back(row, value);
    return view;
}

}  // namespace detail

Dataset resample_weighted(const Dataset& data, std::uint64_t seed) {
    const std::size_t n = data.size();
    std::vector<double> weights = data.weights;
    if (weights.empty()) weights.assign(n, 1.0 / static_cast<double>(n));
    double total = 0.0;
    for (double w : weights) total += w;
    Rng rng(seed);
    Dataset out;
    out.num_classes = data.num_classes;
    out.dim = data.dim;
    out.space_hash = data.space_hash;
    out.numeric_columns = data.numeric_columns;
    out.vectors.reserve(n);
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = rng.weighted_index(weights, total);
        out.vectors.push_back(data.vectors[pick]);
        out.labels.push_back(data.labels[pick]);
    }
    return out;
}

namespace {

int infer_num_classes(const Dataset& data) {
    if (data.num_classes > 0) return data.num_classes;
    int k = 0;
    for (int label : data.labels) k = std::max(k, label + 1);
    return k;
}

// Learners without native instance weighting see a seeded weighted bootstrap
// instead; uniform weights leave the data untouched.
Dataset maybe_resample(const LearnerSpec& spec, const Dataset& data) {
    if (detail::weights_are_uniform(data)) {
        Dataset copy = data;
        copy.weights.clear();
        return copy;
    }
    return resample_weighted(data, derive_seed(spec.seed, "weight-resample"));
}

}  // namespace

Model train(const LearnerSpec& spec, const Dataset& data) {
    if (data.vectors.empty()) throw EmptyDataset();
    if (data.vectors.size() != data.labels.size()) throw Error("vectors/labels size mismatch");
    if (!data.weights.empty() && data.weights.size() != data.vectors.size())
        throw Error("weights size mismatch");

    Model model;
    model.kind = spec.kind;
    model.dim = data.dim;
    model.space_hash = data.space_hash;
    model.num_classes = infer_num_classes(data);

    Dataset sized = data;
    sized.num_classes = model.num_classes;

    switch (spec.kind) {
        case LearnerKind::NB:
            model.params = detail::train_nb(spec, sized, /*kernel=*/false);
            break;
        case LearnerKind::KNB:
            model.params = detail::train_nb(spec, sized, /*kernel=*/true);
            break;
        case LearnerKind::RI:
            model.params = detail::train_ri(spec, maybe_resample(spec, sized));
            break;
        case LearnerKind::DT:
            model.params = detail::train_dt(spec, maybe_resample(spec, sized));
            break;
    }
    return model;
}

Prediction predict(const Model& model, const SparseVector& vector) {
    if (vector.dim != model.dim) throw IndexMismatch();
    if (std::holds_alternative<NbModel>(model.params))
        return detail::predict_nb(std::get<NbModel>(model.params), model.num_classes, vector);
    if (std::holds_alternative<RiModel>(model.params))
        return detail::predict_ri(std::get<RiModel>(model.params), model.num_classes, vector);
    return detail::predict_dt(std::get<DtModel>(model.params), vector);
}

std::vector<double> nb_posterior(const Model& model, const SparseVector& vector) {
    if (!std::holds_alternative<NbModel>(model.params))
        throw Error("nb_posterior requires an NB or k-NB model");
    if (vector.dim != model.dim) throw IndexMismatch();
    return detail::predict_nb(std::get<NbModel>(model.params), model.num_classes, vector).scores;
}

// --- serialization ---------------------------------------------------------------

namespace {

json sparse_counts_to_json(const std::vector<std::pair<std::uint32_t, double>>& counts) {
    json cols = json::array(), vals = json::array();
    for (const auto& [c, v] : counts) {
        cols.push_back(c);
        vals.push_back(v);
    }
    return json{{"columns", std::move(cols)}, {"values", std::move(vals)}};
}

std::vector<std::pair<std::uint32_t, double>> sparse_counts_from_json(const json& j) {
    std::vector<std::pair<std::uint32_t, double>> out;
    const auto& cols = j.at("columns");
    const auto& vals = j.at("values");
    for (std::size_t i = 0; i < cols.size(); ++i)
        out.emplace_back(cols[i].get<std::uint32_t>(), vals[i].get<double>());
    return out;
}

json nb_to_json(const NbModel& m) {
    json j;
    j["alpha"] = m.alpha;
    j["kernel"] = m.kernel;
    j["class_totals"] = m.class_totals;
    j["total_weight"] = m.total_weight;
    j["count_sums"] = m.count_sums;
    j["count_column_total"] = m.count_column_total;
    json counts = json::array();
    for (const auto& c : m.feature_counts) counts.push_back(sparse_counts_to_json(c));
    j["feature_counts"] = std::move(counts);
    j["numeric_columns"] = m.numeric_columns;
    json kdes = json::array();
    for (const auto& per_class : m.kde) {
        json row = json::array();
        for (const auto& k : per_class)
            row.push_back(json{{"values", k.values},
                               {"weights", k.weights},
                               {"weight_total", k.weight_total},
                               {"bandwidth", k.bandwidth}});
        kdes.push_back(std::move(row));
    }
    j["kde"] = std::move(kdes);
    return j;
}

NbModel nb_from_json(const json& j) {
    NbModel m;
    m.alpha = j.at("alpha").get<double>();
    m.kernel = j.at("kernel").get<bool>();
    m.class_totals = j.at("class_totals").get<std::vector<double>>();
    m.total_weight = j.at("total_weight").get<double>();
    m.count_sums = j.at("count_sums").get<std::vector<double>>();
    m.count_column_total = j.at("count_column_total").get<std::uint32_t>();
    for (const auto& c : j.at("feature_counts")) m.feature_counts.push_back(sparse_counts_from_json(c));
    m.numeric_columns = j.at("numeric_columns").get<std::vector<std::uint32_t>>();
    for (const auto& row : j.at("kde")) {
        std::vector<NbModel::Kde> per_class;
        for (const auto& k : row) {
            NbModel::Kde kde;
            kde.values = k.at("values").get<std::vector<double>>();
            kde.weights = k.at("weights").get<std::vector<double>>();
            kde.weight_total = k.at("weight_total").get<double>();
            kde.bandwidth = k.at("bandwidth").get<double>();
            per_class.push_back(std::move(kde));
        }
        m.kde.push_back(std::move(per_class));
    }
    return m;
}

json ri_to_json(const RiModel& m) {
    json rules = json::array();
    for (const RiRule& rule : m.rules) {
        json conds = json::array();
        for (const RiCondition& c : rule.conditions)
            conds.push_back(json{{"column", c.column}, {"threshold", c.threshold}});
        rules.push_back(json{{"label", rule.label}, {"conditions", std::move(conds)}});
    }
    return json{{"rules", std::move(rules)}, {"default_label", m.default_label}};
}

RiModel ri_from_json(const json& j) {
    RiModel m;
    m.default_label = j.at("default_label").get<int>();
    for (const auto& r : j.at("rules")) {
        RiRule rule;
        rule.label = r.at("label").get<int>();
        for (const auto& c : r.at("conditions"))
            rule.conditions.push_back(RiCondition{c.at("column").get<std::uint32_t>(), c.at("threshold").get<double>()});
        m.rules.push_back(std::move(rule));
    }
    return m;
}

json dt_to_json(const DtModel& m) {
    json nodes = json::array();
    for (const DtNode& n : m.nodes) {
        json jn;
        jn["left"] = n.left;
        jn["right"] = n.right;
        jn["column"] = n.column;
        jn["threshold"] = n.threshold;
        jn["scores"] = n.scores;
        nodes.push_back(std::move(jn));
    }
    return json{{"nodes", std::move(nodes)}};
}

DtModel dt_from_json(const json& j) {
    DtModel m;
    for (const auto& jn : j.at("nodes")) {
        DtNode n;
        n.left = jn.at("left").get<std::int32_t>();
        n.right = jn.at("right").get<std::int32_t>();
        n.column = jn.at("column").get<std::uint32_t>();
        n.threshold = jn.at("threshold").get<double>();
        n.scores = jn.at("scores").get<std::vector<double>>();
        m.nodes.push_back(std::move(n));
    }
    return m;
}

}  // namespace

nlohmann::json model_to_json(const Model& model) {
    json j;
    j["format"] = 1;
    j["kind"] = std::string(to_string(model.kind));
    j["dim"] = model.dim;
    j["space_hash"] = model.space_hash;
    j["num_classes"] = model.num_classes;
    if (std::holds_alternative<NbModel>(model.params)) j["nb"] = nb_to_json(std::get<NbModel>(model.params));
    else if (std::holds_alternative<RiModel>(model.params)) j["ri"] = ri_to_json(std::get<RiModel>(model.params));
    else j["dt"] = dt_to_json(std::get<DtModel>(model.params));
    return j;
}

Model model_from_json(const nlohmann::json& j) {
    Model m;
    auto kind = learner_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error("unknown learner kind in model file");
    m.kind = *kind;
    m.dim = j.at("dim").get<std::uint32_t>();
    m.space_hash = j.at("space_hash").get<std::uint64_t>();
    m.num_classes = j.at("num_classes").get<int>();
    if (j.contains("nb")) m.params = nb_from_json(j.at("nb"));
    else if (j.contains("ri")) m.params = ri_from_json(j.at("ri"));
    else if (j.contains("dt")) m.params = dt_from_json(j.at("dt"));
    else throw Error("model file has no parameter block");
    return m;
}

}  // namespace benqc
