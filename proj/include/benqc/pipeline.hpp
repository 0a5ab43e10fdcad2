#pragma once

#include "benqc/eval.hpp"

namespace benqc {

// A trained classification pipeline packaged with everything prediction
// needs: feature index, feature config, lexicons and taxonomy snapshot, and
// the trained model(s). Fine-level pipelines carry one fine model per coarse
// class plus (for pipelined routing) a coarse router model.
struct Pipeline {
    static constexpr int kFormatVersion = 1;

    enum class Level : std::uint8_t { COARSE, FINE };

    Level level = Level::COARSE;
    FineMode fine_mode = FineMode::GOLD_PARTITION;
    FeatureConfig config;
    ApproachSpec approach;
    std::uint64_t seed = 0;

    std::string taxonomy_text;
    std::string interrogatives_text;
    std::string gazetteers_text;

    // Coarse level (also the pipelined router's slot at fine level).
    std::optional<FeatureIndex> coarse_index;
    std::optional<AnyModel> coarse_model;

    struct FinePart {
        CoarseClass coarse;
        std::size_t n_train = 0;
        FeatureIndex index;
        AnyModel model;
    };
    std::vector<FinePart> fine_parts;

    Taxonomy taxonomy() const { return Taxonomy::parse(taxonomy_text); }
    Lexicons lexicons() const { return Lexicons::parse(interrogatives_text, gazetteers_text); }
};

struct PipelinePrediction {
    std::string id;
    Label label;
    double score = 0.0;  // winning class score
};

// Trains a coarse- or fine-level pipeline on the given training records.
Pipeline train_pipeline(Pipeline::Level level, const ApproachSpec& approach,
                        const FeatureConfig& config, FineMode fine_mode,
                        const std::vector<QuestionRecord>& train, const Taxonomy& taxonomy,
                        const Lexicons& lexicons, std::uint64_t seed,
                        std::string_view taxonomy_text, std::string_view interrogatives_text,
                        std::string_view gazetteers_text);

// Predicts one record. Fine pipelines in GOLD mode require the record's gold
// coarse label for routing; PIPELINED mode uses the embedded coarse router.
PipelinePrediction pipeline_predict(const Pipeline& pipeline, const QuestionRecord& record,
                                    const Lexicons& lexicons);

nlohmann::json pipeline_to_json(const Pipeline& pipeline);
Pipeline pipeline_from_json(const nlohmann::json& j);

void save_pipeline(const Pipeline& pipeline, const std::string& path);
Pipeline load_pipeline(const std::string& path);

// Feature index round-trip (shared by pipeline serialization and tests).
nlohmann::json feature_index_to_json(const FeatureIndex& index);
FeatureIndex feature_index_from_json(const nlohmann::json& j);

nlohmann::json approach_spec_to_json(const ApproachSpec& spec);
ApproachSpec approach_spec_from_json(const nlohmann::json& j);

// Human-readable training summary (members, boosting rounds with epsilon,
// beta and the halt reason, rule/node counts).
std::string pipeline_summary(const Pipeline& pipeline);

// Atomic file write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace benqc
