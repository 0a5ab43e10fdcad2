#include "benqc/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "benqc/rng.hpp"

namespace benqc {

using nlohmann::json;

namespace {

std::optional<FeatureNs> feature_ns_from_string(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(FeatureNs::COARSE_CLASS); ++i) {
        const auto ns = static_cast<FeatureNs>(i);
        if (s == to_string(ns)) return ns;
    }
    return std::nullopt;
}

}  // namespace

json feature_index_to_json(const FeatureIndex& index) {
    json features = json::array();
    for (const FeatureId& id : index.features())
        features.push_back(json::array({std::string(to_string(id.ns)), id.key}));
    return json{{"features", std::move(features)}};
}

FeatureIndex feature_index_from_json(const json& j) {
    std::vector<FeatureId> features;
    for (const auto& f : j.at("features")) {
        auto ns = feature_ns_from_string(f.at(0).get<std::string>());
        if (!ns) throw Error("unknown feature namespace in index");
        features.push_back(FeatureId{*ns, f.at(1).get<std::string>()});
    }
    return FeatureIndex::from_features(std::move(features));
}

json approach_spec_to_json(const ApproachSpec& spec) {
    return json{{"kind", std::string(to_string(spec.kind))},
                {"base", std::string(to_string(spec.base))},
                {"meta", std::string(to_string(spec.meta))},
                {"size", spec.size},
                {"max_iters", spec.max_iters},
                {"meta_cv_folds", spec.stacking.meta_cv_folds},
                {"probability_encoding", spec.stacking.probability_encoding},
                {"hyper", learner_spec_to_json(spec.hyper)}};
}

ApproachSpec approach_spec_from_json(const json& j) {
    ApproachSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "individual") spec.kind = ApproachKind::INDIVIDUAL;
    else if (kind == "bagging") spec.kind = ApproachKind::BAGGING;
    else if (kind == "boosting") spec.kind = ApproachKind::BOOSTING;
    else if (kind == "stacking") spec.kind = ApproachKind::STACKING;
    else if (kind == "voting") spec.kind = ApproachKind::VOTING;
    else throw Error("unknown approach kind '" + kind + "'");
    spec.base = *learner_kind_from_string(j.at("base").get<std::string>());
    spec.meta = *learner_kind_from_string(j.at("meta").get<std::string>());
    spec.size = j.at("size").get<int>();
    spec.max_iters = j.at("max_iters").get<int>();
    spec.stacking.meta_cv_folds = j.at("meta_cv_folds").get<int>();
    spec.stacking.probability_encoding = j.at("probability_encoding").get<bool>();
    spec.hyper = learner_spec_from_json(j.at("hyper"));
    return spec;
}

Pipeline train_pipeline(Pipeline::Level level, const ApproachSpec& approach,
                        const FeatureConfig& config, FineMode fine_mode,
                        const std::vector<QuestionRecord>& train, const Taxonomy& taxonomy,
                        const Lexicons& lexicons, std::uint64_t seed,
                        std::string_view taxonomy_text, std::string_view interrogatives_text,
                        std::string_view gazetteers_text) {
    Pipeline p;
    p.level = level;
    p.fine_mode = fine_mode;
    p.config = config;
    p.approach = approach;
    p.seed = seed;
    p.taxonomy_text = taxonomy_text;
    p.interrogatives_text = interrogatives_text;
    p.gazetteers_text = gazetteers_text;

    if (level == Pipeline::Level::COARSE) {
        FeatureConfig coarse_config = config;
        coarse_config.include_coarse_class = false;  // the model predicts it
        p.config = coarse_config;
        p.coarse_index = build_feature_index(train, coarse_config, lexicons);
        const Dataset data = make_dataset(train, *p.coarse_index, coarse_config, lexicons, LabelCodec::coarse());
        p.coarse_model = train_approach(approach, data, derive_seed(seed, "coarse"));
        return p;
    }

    // Fine level: one model per populated coarse partition.
    for (std::size_t ci = 0; ci < kNumCoarseClasses; ++ci) {
        const CoarseClass coarse = coarse_classes()[ci];
        std::vector<QuestionRecord> part;
        for (const QuestionRecord& rec : train) {
            if (!rec.label) throw InvalidLabel(rec.id, "fine training needs labels");
            if (rec.label->coarse == coarse) part.push_back(rec);
        }
        if (part.empty()) continue;
        Pipeline::FinePart fp{coarse, part.size(), build_feature_index(part, config, lexicons), Model{}};
        const Dataset data = make_dataset(part, fp.index, config, lexicons, LabelCodec::fine(taxonomy, coarse));
        fp.model = train_approach(approach, data, derive_seed(seed, "fine-part", ci));
        p.fine_parts.push_back(std::move(fp));
    }
    if (fine_mode == FineMode::PIPELINED) {
        FeatureConfig coarse_config = config;
        coarse_config.include_coarse_class = false;
        p.coarse_index = build_feature_index(train, coarse_config, lexicons);
        const Dataset data = make_dataset(train, *p.coarse_index, coarse_config, lexicons, LabelCodec::coarse());
        p.coarse_model = train_approach(approach, data, derive_seed(seed, "fine-coarse-router"));
    }
    return p;
}

PipelinePrediction pipeline_predict(const Pipeline& p, const QuestionRecord& record,
                                    const Lexicons& lexicons) {
    PipelinePrediction out;
    out.id = record.id;

    if (p.level == Pipeline::Level::COARSE) {
        const SparseVector vec = vectorize(record, *p.coarse_index, p.config, lexicons);
        const Prediction pred = predict_any(*p.coarse_model, vec);
        out.label = Label{static_cast<CoarseClass>(pred.label), std::nullopt};
        out.score = pred.scores[pred.label];
        return out;
    }

    CoarseClass routed;
    double coarse_score = 1.0;
    if (p.fine_mode == FineMode::PIPELINED) {
        FeatureConfig coarse_config = p.config;
        coarse_config.include_coarse_class = false;
        const SparseVector vec = vectorize(record, *p.coarse_index, coarse_config, lexicons);
        const Prediction pred = predict_any(*p.coarse_model, vec);
        routed = static_cast<CoarseClass>(pred.label);
        coarse_score = pred.scores[pred.label];
    } else {
        if (!record.label)
            throw InvalidLabel(record.id, "gold-routing fine pipeline needs the record's coarse label");
        routed = record.label->coarse;
    }

    const Taxonomy taxonomy = p.taxonomy();
    for (const Pipeline::FinePart& part : p.fine_parts) {
        if (part.coarse != routed) continue;
        std::optional<CoarseClass> hint;
        if (p.config.include_coarse_class) hint = routed;
        const SparseVector vec = vectorize(record, part.index, p.config, lexicons, hint);
        const Prediction pred = predict_any(part.model, vec);
        const auto& fines = taxonomy.fine_classes(routed);
        out.label = Label{routed, fines.at(pred.label).name};
        out.score = coarse_score * pred.scores[pred.label];
        return out;
    }
    // No fine model for the routed class (empty training partition).
    out.label = Label{routed, std::nullopt};
    out.score = coarse_score;
    return out;
}

json pipeline_to_json(const Pipeline& p) {
    json j;
    j["format"] = Pipeline::kFormatVersion;
    j["level"] = p.level == Pipeline::Level::COARSE ? "coarse" : "fine";
    j["fine_mode"] = std::string(to_string(p.fine_mode));
    j["feature_set"] = p.config.set_name();
    j["word_unigrams"] = p.config.word_unigrams;
    j["include_coarse_class"] = p.config.include_coarse_class;
    j["approach"] = approach_spec_to_json(p.approach);
    j["seed"] = p.seed;
    j["taxonomy"] = p.taxonomy_text;
    j["interrogatives"] = p.interrogatives_text;
    j["gazetteers"] = p.gazetteers_text;
    if (p.coarse_index) j["coarse_index"] = feature_index_to_json(*p.coarse_index);
    if (p.coarse_model) j["coarse_model"] = any_model_to_json(*p.coarse_model);
    json parts = json::array();
    for (const Pipeline::FinePart& part : p.fine_parts)
        parts.push_back(json{{"coarse", std::string(to_string(part.coarse))},
                             {"n_train", part.n_train},
                             {"index", feature_index_to_json(part.index)},
                             {"model", any_model_to_json(part.model)}});
    j["fine_parts"] = std::move(parts);
    return j;
}

Pipeline pipeline_from_json(const json& j) {
    if (j.at("format").get<int>() != Pipeline::kFormatVersion)
        throw Error("unsupported pipeline format version");
    Pipeline p;
    p.level = j.at("level").get<std::string>() == "coarse" ? Pipeline::Level::COARSE : Pipeline::Level::FINE;
    p.fine_mode = j.at("fine_mode").get<std::string>() == "gold" ? FineMode::GOLD_PARTITION : FineMode::PIPELINED;
    p.config = FeatureConfig::from_set_name(j.at("feature_set").get<std::string>());
    p.config.word_unigrams = j.at("word_unigrams").get<bool>();
    p.config.include_coarse_class = j.at("include_coarse_class").get<bool>();
    p.approach = approach_spec_from_json(j.at("approach"));
    p.seed = j.at("seed").get<std::uint64_t>();
    p.taxonomy_text = j.at("taxonomy").get<std::string>();
    p.interrogatives_text = j.at("interrogatives").get<std::string>();
    p.gazetteers_text = j.at("gazetteers").get<std::string>();
    if (j.contains("coarse_index")) p.coarse_index = feature_index_from_json(j.at("coarse_index"));
    if (j.contains("coarse_model")) p.coarse_model = any_model_from_json(j.at("coarse_model"));
    for (const auto& part : j.at("fine_parts")) {
        Pipeline::FinePart fp{*coarse_from_string(part.at("coarse").get<std::string>()),
                              part.at("n_train").get<std::size_t>(),
                              feature_index_from_json(part.at("index")),
                              any_model_from_json(part.at("model"))};
        p.fine_parts.push_back(std::move(fp));
    }
    return p;
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, target);
}

void save_pipeline(const Pipeline& pipeline, const std::string& path) {
    write_file_atomic(path, pipeline_to_json(pipeline).dump(2) + "\n");
}

Pipeline load_pipeline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error("model file is not valid JSON: " + path);
    return pipeline_from_json(j);
}

namespace {

void summarize_any(const AnyModel& model, std::ostringstream& out, const std::string& indent) {
    if (std::holds_alternative<Model>(model)) {
        const Model& m = std::get<Model>(model);
        out << indent << to_string(m.kind) << " model, " << m.dim << " features, " << m.num_classes
            << " classes";
        if (std::holds_alternative<RiModel>(m.params))
            out << ", " << std::get<RiModel>(m.params).rules.size() << " rules";
        if (std::holds_alternative<DtModel>(m.params))
            out << ", " << std::get<DtModel>(m.params).nodes.size() << " nodes";
        out << '\n';
    } else if (std::holds_alternative<BaggedModel>(model)) {
        const BaggedModel& m = std::get<BaggedModel>(model);
        out << indent << "bagged " << to_string(m.base.kind) << ", size " << m.members.size() << '\n';
    } else if (std::holds_alternative<BoostModel>(model)) {
        const BoostModel& m = std::get<BoostModel>(model);
        out << indent << "boosted " << to_string(m.base.kind) << ", " << m.rounds.size()
            << " rounds, halt " << to_string(m.halt);
        if (m.no_usable_round()) out << " (no usable round; unweighted fallback)";
        out << '\n';
        for (std::size_t t = 0; t < m.rounds.size(); ++t)
            out << indent << "  round " << t + 1 << ": epsilon " << m.rounds[t].epsilon << ", beta "
                << m.rounds[t].beta << ", weight " << std::log(1.0 / m.rounds[t].beta) << '\n';
    } else if (std::holds_alternative<StackModel>(model)) {
        const StackModel& m = std::get<StackModel>(model);
        out << indent << "stacked: bases";
        for (const LearnerSpec& s : m.base_specs) out << ' ' << to_string(s.kind);
        out << ", meta " << to_string(m.meta_spec.kind) << '\n';
    } else {
        const VotedModel& m = std::get<VotedModel>(model);
        out << indent << "voted: members";
        for (const LearnerSpec& s : m.specs) out << ' ' << to_string(s.kind);
        out << ", priority";
        for (LearnerKind k : m.priority) out << ' ' << to_string(k);
        out << '\n';
    }
}

}  // namespace

std::string pipeline_summary(const Pipeline& p) {
    std::ostringstream out;
    out << "level: " << (p.level == Pipeline::Level::COARSE ? "coarse" : "fine") << '\n';
    out << "approach: " << p.approach.label() << '\n';
    out << "features: " << p.config.set_name()
        << (p.config.include_coarse_class ? " (+coarse-class)" : "") << '\n';
    out << "seed: " << p.seed << '\n';
    if (p.coarse_index) out << "coarse feature space: " << p.coarse_index->size() << " features\n";
    if (p.coarse_model) summarize_any(*p.coarse_model, out, "  ");
    for (const Pipeline::FinePart& part : p.fine_parts) {
        out << "fine " << to_string(part.coarse) << ": " << part.n_train << " train records, "
            << part.index.size() << " features\n";
        summarize_any(part.model, out, "  ");
    }
    return out.str();
}

}  // namespace benqc
