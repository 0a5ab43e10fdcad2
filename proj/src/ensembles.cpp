#include "benqc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "benqc/rng.hpp"

namespace benqc {

using nlohmann::json;

namespace {

constexpr double kBetaMin = 1e-10;  // stands in for beta at epsilon == 0

Dataset bootstrap_sample(const Dataset& data, Rng& rng) {
    Dataset out;
    out.num_classes = data.num_classes;
    out.dim = data.dim;
    out.space_hash = data.space_hash;
    out.numeric_columns = data.numeric_columns;
    const std::size_t n = data.size();
    out.vectors.reserve(n);
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = static_cast<std::size_t>(rng.uniform_index(n));
        out.vectors.push_back(data.vectors[pick]);
        out.labels.push_back(data.labels[pick]);
    }
    return out;
}

void check_distinct_kinds(const std::vector<LearnerKind>& kinds) {
    std::vector<bool> seen(4, false);
    for (LearnerKind k : kinds) {
        if (seen[static_cast<std::size_t>(k)]) throw DuplicateLearnerKind();
        seen[static_cast<std::size_t>(k)] = true;
    }
    if (kinds.size() == 4)
        for (bool s : seen)
            if (!s) throw DuplicateLearnerKind();
}

}  // namespace

// --- bagging --------------------------------------------------------------------

BaggedModel bagging_train(const LearnerSpec& base, const Dataset& data, int size, std::uint64_t seed) {
    if (size < 1) throw Error("bagging size must be >= 1");
    BaggedModel model;
    model.base = base;
    model.seed = seed;
    const Rng root(seed);
    for (int t = 0; t < size; ++t) {
        Rng boot = root.split("bagging-bootstrap", static_cast<std::uint64_t>(t));
        const Dataset sample = bootstrap_sample(data, boot);
        const LearnerSpec member_spec =
            base.with_seed(derive_seed(seed, "bagging-member", static_cast<std::uint64_t>(t)));
        model.members.push_back(train(member_spec, sample));
    }
    return model;
}

Prediction bagging_predict(const BaggedModel& model, const SparseVector& vector) {
    std::vector<Prediction> votes;
    votes.reserve(model.members.size());
    for (const Model& member : model.members) votes.push_back(predict(member, vector));
    const int num_classes = model.members.front().num_classes;
    const int label = majority_vote(votes);
    std::vector<double> scores(num_classes, 0.0);
    for (const Prediction& v : votes) scores[v.label] += 1.0;
    for (double& s : scores) s /= static_cast<double>(votes.size());
    Prediction out = make_prediction(std::move(scores));
    out.label = label;
    return out;
}

// --- boosting -----------------------------------------------------------------------

std::string_view to_string(BoostHalt h) {
    switch (h) {
        case BoostHalt::MAX_ITERS: return "max_iters";
        case BoostHalt::EPSILON_ZERO: return "epsilon_zero";
        case BoostHalt::EPSILON_GE_HALF: return "epsilon_ge_half";
    }
    return "?";
}

BoostModel adaboost_train(const LearnerSpec& base, const Dataset& data, int max_iters, std::uint64_t seed) {
    if (max_iters < 1) throw Error("max_iters must be >= 1");
    if (data.vectors.empty()) throw EmptyDataset();

    BoostModel model;
    model.base = base;
    model.max_iters = max_iters;
    model.seed = seed;
    model.halt = BoostHalt::MAX_ITERS;

    const std::size_t n = data.size();
    std::vector<double> dist(n, 1.0 / static_cast<double>(n));

    for (int t = 0; t < max_iters; ++t) {
        Dataset weighted = data;
        weighted.weights = dist;
        const LearnerSpec round_spec =
            base.with_seed(derive_seed(seed, "boost-round", static_cast<std::uint64_t>(t)));
        Model h = train(round_spec, weighted);

        std::vector<bool> correct(n);
        double epsilon = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            correct[i] = predict(h, data.vectors[i]).label == data.labels[i];
            if (!correct[i]) epsilon += dist[i];
        }

        if (epsilon <= 0.0) {
            // Perfect round: beta is undefined at zero error, so store the
            // round with beta floored and stop.
            model.rounds.push_back(BoostRound{std::move(h), 0.0, kBetaMin});
            model.halt = BoostHalt::EPSILON_ZERO;
            return model;
        }
        if (epsilon >= 0.5) {
            model.halt = BoostHalt::EPSILON_GE_HALF;
            if (model.rounds.empty()) {
                // No usable round at all; keep the unweighted base learner as
                // a flagged fallback.
                model.fallback = train(base, data);
            }
            return model;
        }

        const double beta = epsilon / (1.0 - epsilon);
        model.rounds.push_back(BoostRound{std::move(h), epsilon, beta});

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (correct[i]) dist[i] *= beta;
            total += dist[i];
        }
        for (double& w : dist) w /= total;
    }
    return model;
}

Prediction adaboost_predict_prefix(const BoostModel& model, const SparseVector& vector, std::size_t rounds) {
    if (model.fallback) return predict(*model.fallback, vector);
    if (model.rounds.empty()) throw Error("boost model has no rounds");
    rounds = std::min(rounds, model.rounds.size());

    const int num_classes = model.rounds.front().model.num_classes;
    std::vector<double> weight_sums(num_classes, 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < rounds; ++t) {
        const BoostRound& round = model.rounds[t];
        const double w = std::log(1.0 / round.beta);
        weight_sums[predict(round.model, vector).label] += w;
        total += w;
    }
    for (double& s : weight_sums) s /= total;
    return make_prediction(std::move(weight_sums));
}

Prediction adaboost_predict(const BoostModel& model, const SparseVector& vector) {
    return adaboost_predict_prefix(model, vector, model.rounds.size());
}

// --- stacking -----------------------------------------------------------------------

SparseVector encode_meta_features(const std::vector<Prediction>& base_predictions, int num_classes,
                                  bool probability_encoding) {
    SparseVector vec;
    vec.dim = static_cast<std::uint32_t>(base_predictions.size() * static_cast<std::size_t>(num_classes));
    for (std::size_t b = 0; b < base_predictions.size(); ++b) {
        const std::uint32_t offset = static_cast<std::uint32_t>(b * static_cast<std::size_t>(num_classes));
        if (probability_encoding) {
            for (int c = 0; c < num_classes; ++c) {
                const double v = base_predictions[b].scores[c];
                if (v != 0.0) vec.entries.emplace_back(offset + static_cast<std::uint32_t>(c), v);
            }
        } else {
            vec.entries.emplace_back(offset + static_cast<std::uint32_t>(base_predictions[b].label), 1.0);
        }
    }
    return vec;
}

namespace {

std::uint64_t meta_space_hash(const std::array<LearnerSpec, 3>& bases, int num_classes, bool prob) {
    std::uint64_t h = fnv1a64("stack-meta");
    for (const LearnerSpec& s : bases) h = splitmix64(h ^ fnv1a64(to_string(s.kind)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(num_classes));
    return splitmix64(h ^ static_cast<std::uint64_t>(prob ? 1 : 0));
}

}  // namespace

StackModel stacking_train(const std::array<LearnerSpec, 3>& bases, const LearnerSpec& meta,
                          const Dataset& data, const StackingOptions& options) {
    check_distinct_kinds({bases[0].kind, bases[1].kind, bases[2].kind, meta.kind});
    if (data.vectors.empty()) throw EmptyDataset();

    StackModel model;
    model.base_specs = bases;
    model.meta_spec = meta;
    model.options = options;

    for (const LearnerSpec& spec : bases) model.bases.push_back(train(spec, data));
    model.num_classes = model.bases.front().num_classes;
    const int k = model.num_classes;

    // Meta training rows: base predictions on the training instances.
    const std::size_t n = data.size();
    std::vector<std::vector<Prediction>> base_preds(n);
    if (options.meta_cv_folds >= 2) {
        // Out-of-fold predictions: fold assignment is a seeded shuffle keyed
        // by the meta seed; bases are refit per fold but the stored bases
        // stay full-data.
        const int folds = options.meta_cv_folds;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        Rng rng = Rng(meta.seed).split("stack-folds");
        rng.shuffle(order);
        std::vector<int> fold_of(n);
        for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = static_cast<int>(i % folds);

        for (int f = 0; f < folds; ++f) {
            Dataset fit;
            fit.num_classes = data.num_classes;
            fit.dim = data.dim;
            fit.space_hash = data.space_hash;
            fit.numeric_columns = data.numeric_columns;
            for (std::size_t i = 0; i < n; ++i) {
                if (fold_of[i] == f) continue;
                fit.vectors.push_back(data.vectors[i]);
                fit.labels.push_back(data.labels[i]);
            }
            if (fit.vectors.empty()) throw Error("meta_cv_folds leaves an empty training fold");
            for (const LearnerSpec& spec : bases) {
                const Model fold_model = train(spec, fit);
                for (std::size_t i = 0; i < n; ++i)
                    if (fold_of[i] == f) base_preds[i].push_back(predict(fold_model, data.vectors[i]));
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (const Model& base : model.bases) base_preds[i].push_back(predict(base, data.vectors[i]));
    }

    Dataset meta_data;
    meta_data.num_classes = k;
    meta_data.dim = static_cast<std::uint32_t>(3 * k);
    meta_data.space_hash = meta_space_hash(bases, k, options.probability_encoding);
    for (std::size_t i = 0; i < n; ++i) {
        meta_data.vectors.push_back(encode_meta_features(base_preds[i], k, options.probability_encoding));
        meta_data.labels.push_back(data.labels[i]);
    }
    model.meta = train(meta, meta_data);
    return model;
}

Prediction stacking_predict(const StackModel& model, const SparseVector& vector) {
    std::vector<Prediction> base_preds;
    base_preds.reserve(model.bases.size());
    for (const Model& base : model.bases) base_preds.push_back(predict(base, vector));
    const SparseVector meta_vec =
        encode_meta_features(base_preds, model.num_classes, model.options.probability_encoding);
    return predict(model.meta, meta_vec);
}

// --- voting -------------------------------------------------------------------------

std::vector<LearnerKind> default_vote_priority() {
    return {LearnerKind::DT, LearnerKind::RI, LearnerKind::KNB, LearnerKind::NB};
}

int majority_vote(const std::vector<Prediction>& predictions, const std::vector<std::size_t>& voter_priority) {
    if (predictions.empty()) throw Error("majority_vote needs at least one prediction");

    std::map<int, std::size_t> counts;
    for (const Prediction& p : predictions) counts[p.label] += 1;
    std::size_t best_count = 0;
    for (const auto& [label, count] : counts) best_count = std::max(best_count, count);

    std::vector<std::size_t> order = voter_priority;
    if (order.empty())
        for (std::size_t i = 0; i < predictions.size(); ++i) order.push_back(i);

    for (std::size_t voter : order)
        if (counts.at(predictions[voter].label) == best_count) return predictions[voter].label;
    return predictions.front().label;  // unreachable: some voter holds the plurality label
}

VotedModel voting_train(const Dataset& data, const std::array<LearnerSpec, 4>& specs,
                        std::vector<LearnerKind> priority) {
    check_distinct_kinds({specs[0].kind, specs[1].kind, specs[2].kind, specs[3].kind});
    check_distinct_kinds(priority);
    if (priority.size() != 4) throw DuplicateLearnerKind();
    VotedModel model;
    model.specs = specs;
    model.priority = std::move(priority);
    for (std::size_t i = 0; i < 4; ++i) model.members[i] = train(specs[i], data);
    return model;
}

Prediction voting_predict(const VotedModel& model, const SparseVector& vector) {
    std::vector<Prediction> votes;
    votes.reserve(4);
    for (const Model& member : model.members) votes.push_back(predict(member, vector));

    std::vector<std::size_t> order;
    for (LearnerKind k : model.priority)
        for (std::size_t i = 0; i < 4; ++i)
            if (model.specs[i].kind == k) order.push_back(i);

    const int num_classes = model.members.front().num_classes;
    const int label = majority_vote(votes, order);
    std::vector<double> scores(num_classes, 0.0);
    for (const Prediction& v : votes) scores[v.label] += 0.25;
    Prediction out = make_prediction(std::move(scores));
    out.label = label;
    return out;
}

// --- serialization --------------------------------------------------------------------

json learner_spec_to_json(const LearnerSpec& spec) {
    return json{{"kind", std::string(to_string(spec.kind))},
                {"seed", spec.seed},
                {"nb_alpha", spec.nb_alpha},
                {"kde_bandwidth_floor", spec.kde_bandwidth_floor},
                {"ri_min_coverage", spec.ri_min_coverage},
                {"ri_grow_fraction", spec.ri_grow_fraction},
                {"dt_min_leaf", spec.dt_min_leaf},
                {"dt_max_depth", spec.dt_max_depth}};
}

LearnerSpec learner_spec_from_json(const json& j) {
    LearnerSpec spec;
    auto kind = learner_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error("unknown learner kind");
    spec.kind = *kind;
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.nb_alpha = j.at("nb_alpha").get<double>();
    spec.kde_bandwidth_floor = j.at("kde_bandwidth_floor").get<double>();
    spec.ri_min_coverage = j.at("ri_min_coverage").get<int>();
    spec.ri_grow_fraction = j.at("ri_grow_fraction").get<double>();
    spec.dt_min_leaf = j.at("dt_min_leaf").get<int>();
    spec.dt_max_depth = j.at("dt_max_depth").get<int>();
    return spec;
}

json bagged_to_json(const BaggedModel& m) {
    json members = json::array();
    for (const Model& member : m.members) members.push_back(model_to_json(member));
    return json{{"type", "bagged"},
                {"base", learner_spec_to_json(m.base)},
                {"seed", m.seed},
                {"members", std::move(members)}};
}

BaggedModel bagged_from_json(const json& j) {
    BaggedModel m;
    m.base = learner_spec_from_json(j.at("base"));
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& member : j.at("members")) m.members.push_back(model_from_json(member));
    return m;
}

json boost_to_json(const BoostModel& m) {
    json rounds = json::array();
    for (const BoostRound& r : m.rounds)
        rounds.push_back(json{{"model", model_to_json(r.model)}, {"epsilon", r.epsilon}, {"beta", r.beta}});
    json j{{"type", "boosted"},
           {"base", learner_spec_to_json(m.base)},
           {"max_iters", m.max_iters},
           {"seed", m.seed},
           {"halt", std::string(to_string(m.halt))},
           {"rounds", std::move(rounds)}};
    if (m.fallback) j["fallback"] = model_to_json(*m.fallback);
    return j;
}

BoostModel boost_from_json(const json& j) {
    BoostModel m;
    m.base = learner_spec_from_json(j.at("base"));
    m.max_iters = j.at("max_iters").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    const std::string halt = j.at("halt").get<std::string>();
    if (halt == "max_iters") m.halt = BoostHalt::MAX_ITERS;
    else if (halt == "epsilon_zero") m.halt = BoostHalt::EPSILON_ZERO;
    else if (halt == "epsilon_ge_half") m.halt = BoostHalt::EPSILON_GE_HALF;
    else throw Error("unknown halt reason");
    for (const auto& r : j.at("rounds"))
        m.rounds.push_back(BoostRound{model_from_json(r.at("model")), r.at("epsilon").get<double>(),
                                      r.at("beta").get<double>()});
    if (j.contains("fallback")) m.fallback = model_from_json(j.at("fallback"));
    return m;
}

json stack_to_json(const StackModel& m) {
    json bases = json::array(), base_specs = json::array();
    for (const Model& b : m.bases) bases.push_back(model_to_json(b));
    for (const LearnerSpec& s : m.base_specs) base_specs.push_back(learner_spec_to_json(s));
    return json{{"type", "stacked"},
                {"base_specs", std::move(base_specs)},
                {"meta_spec", learner_spec_to_json(m.meta_spec)},
                {"bases", std::move(bases)},
                {"meta", model_to_json(m.meta)},
                {"num_classes", m.num_classes},
                {"meta_cv_folds", m.options.meta_cv_folds},
                {"probability_encoding", m.options.probability_encoding}};
}

StackModel stack_from_json(const json& j) {
    StackModel m;
    for (std::size_t i = 0; i < 3; ++i) m.base_specs[i] = learner_spec_from_json(j.at("base_specs").at(i));
    m.meta_spec = learner_spec_from_json(j.at("meta_spec"));
    for (const auto& b : j.at("bases")) m.bases.push_back(model_from_json(b));
    m.meta = model_from_json(j.at("meta"));
    m.num_classes = j.at("num_classes").get<int>();
    m.options.meta_cv_folds = j.at("meta_cv_folds").get<int>();
    m.options.probability_encoding = j.at("probability_encoding").get<bool>();
    return m;
}

json voted_to_json(const VotedModel& m) {
    json specs = json::array(), members = json::array(), priority = json::array();
    for (const LearnerSpec& s : m.specs) specs.push_back(learner_spec_to_json(s));
    for (const Model& member : m.members) members.push_back(model_to_json(member));
    for (LearnerKind k : m.priority) priority.push_back(std::string(to_string(k)));
    return json{{"type", "voted"},
                {"specs", std::move(specs)},
                {"members", std::move(members)},
                {"priority", std::move(priority)}};
}

VotedModel voted_from_json(const json& j) {
    VotedModel m;
    for (std::size_t i = 0; i < 4; ++i) {
        m.specs[i] = learner_spec_from_json(j.at("specs").at(i));
        m.members[i] = model_from_json(j.at("members").at(i));
    }
    for (const auto& p : j.at("priority")) {
        auto kind = learner_kind_from_string(p.get<std::string>());
        if (!kind) throw Error("unknown learner kind in priority");
        m.priority.push_back(*kind);
    }
    return m;
}

}  // namespace benqc
