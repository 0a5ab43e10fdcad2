#pragma once

#include <span>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "benqc/ensembles.hpp"

namespace benqc {

struct LengthMismatch : Error {
    LengthMismatch() : Error("predicted and gold label lists differ in length") {}
};
struct EmptyInput : Error {
    EmptyInput() : Error("label lists are empty") {}
};
struct EmptyCoarsePartition : Error {
    explicit EmptyCoarsePartition(CoarseClass c)
        : Error("no records for coarse class " + std::string(to_string(c))) {}
};

// Fraction of positions where predicted == gold.
double accuracy(std::span<const int> predicted, std::span<const int> gold);

// Maps labels to dense class indices. Coarse level uses the 9 coarse classes
// in taxonomy row order; fine level covers one coarse class's fine classes in
// printed order.
class LabelCodec {
public:
    static LabelCodec coarse();
    static LabelCodec fine(const Taxonomy& taxonomy, CoarseClass parent);

    int num_classes() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int index) const { return names_.at(index); }
    std::optional<CoarseClass> fine_parent() const { return parent_; }

    int index_of(const Label& label) const;  // throws InvalidLabel on unmapped labels

private:
    std::vector<std::string> names_;
    std::optional<CoarseClass> parent_;
};

// Vectorizes labeled records into a learner dataset. Fine-level codecs take
// the coarse hint from each record's gold label when the config asks for it.
Dataset make_dataset(const std::vector<QuestionRecord>& records, const FeatureIndex& index,
                     const FeatureConfig& config, const Lexicons& lexicons, const LabelCodec& codec);

// --- approaches -------------------------------------------------------------------

enum class ApproachKind : std::uint8_t { INDIVIDUAL, BAGGING, BOOSTING, STACKING, VOTING };
std::string_view to_string(ApproachKind k);

struct ApproachSpec {
    ApproachKind kind = ApproachKind::INDIVIDUAL;
    LearnerKind base = LearnerKind::DT;  // individual / bagging / boosting
    LearnerKind meta = LearnerKind::DT;  // stacking model learner
    int size = 10;                       // bagging members
    int max_iters = 16;                  // boosting cap
    StackingOptions stacking;
    LearnerSpec hyper;  // hyperparameter template; kind and seed are overridden

    std::string label() const;  // e.g. "bagging(dt)", "stacking(meta=ri)", "voting"
};

// The 13 approach rows of the combined-results table: bagging and boosting
// over each base learner, stacking with each learner as the meta learner,
// and majority voting.
std::vector<ApproachSpec> combined_approach_rows(const ApproachSpec& prototype = {});
// The 4 single-classifier rows.
std::vector<ApproachSpec> individual_approach_rows(const ApproachSpec& prototype = {});

using AnyModel = std::variant<Model, BaggedModel, BoostModel, StackModel, VotedModel>;

AnyModel train_approach(const ApproachSpec& spec, const Dataset& data, std::uint64_t seed);
Prediction predict_any(const AnyModel& model, const SparseVector& vector);

nlohmann::json any_model_to_json(const AnyModel& model);
AnyModel any_model_from_json(const nlohmann::json& j);

// --- reports ----------------------------------------------------------------------

struct EvaluationReport {
    std::string approach;
    std::string feature_set;
    std::uint64_t seed = 0;
    std::vector<std::string> class_names;
    std::vector<std::vector<std::size_t>> confusion;  // [gold][predicted]
    std::size_t total = 0;
    double overall_accuracy = 0.0;

    std::vector<std::optional<double>> per_class_accuracy() const;
    std::string to_text() const;
};

nlohmann::json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& j);

EvaluationReport evaluate(const AnyModel& model, const std::vector<QuestionRecord>& test,
                          const FeatureIndex& index, const FeatureConfig& config,
                          const Lexicons& lexicons, const LabelCodec& codec,
                          const std::string& approach_label = "", std::uint64_t seed = 0);

// --- size sweeps -------------------------------------------------------------------

enum class Combiner : std::uint8_t { BAGGING, BOOSTING };

struct SweepPoint {
    int size;
    double accuracy;
};

struct SweepCurve {
    Combiner combiner = Combiner::BAGGING;
    std::vector<SweepPoint> points;            // sizes strictly increasing
    std::optional<int> stability_size;
    std::optional<BoostHalt> halt;             // boosting only
    std::size_t halt_round = 0;                // boosting only

    std::string to_csv() const;
};

// First index i such that max-min over accuracies[i .. i+window-1] <= tol.
std::optional<std::size_t> detect_stability_index(const std::vector<double>& accuracies, double tol,
                                                  int window);

// One evaluation per requested size. Bagging grows one member list and
// evaluates prefixes (members are size-independent by construction); the
// boosting curve is truncated at the halt round.
SweepCurve size_sweep(Combiner combiner, const LearnerSpec& base, const Dataset& train,
                      const Dataset& test, const std::vector<int>& sizes, double tol, int window,
                      std::uint64_t seed);

// --- experiment grids ----------------------------------------------------------------

struct GridSpec {
    std::vector<FeatureConfig> feature_sets;
    std::vector<ApproachSpec> rows;
    std::vector<std::uint64_t> seeds{0};
    int jobs = 1;
};

struct GridCell {
    std::vector<double> per_seed;       // parallel to GridSpec::seeds
    std::vector<std::string> errors;    // failures recorded in-cell
    std::optional<double> mean;
};

struct GridResult {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<GridCell>> cells;  // [row][col]

    std::string to_csv() const;   // approach,feature_set,seed,accuracy
    std::string to_text() const;  // aligned table, 2-decimal percentages
};

GridResult run_grid(const GridSpec& spec, const std::vector<QuestionRecord>& train,
                    const std::vector<QuestionRecord>& test, const Lexicons& lexicons,
                    const LabelCodec& codec);

// --- fine-grained protocol -------------------------------------------------------------

enum class FineMode : std::uint8_t { GOLD_PARTITION, PIPELINED };
std::string_view to_string(FineMode m);

struct FineRow {
    CoarseClass coarse;
    bool populated = false;  // absent rows mark empty partitions
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    double accuracy = 0.0;
    std::string error;
};

struct FineReport {
    FineMode mode = FineMode::GOLD_PARTITION;
    std::string approach;
    std::string feature_set;
    std::vector<FineRow> rows;  // one per coarse class, taxonomy order

    std::string to_text() const;
    std::string to_csv() const;
};

// GOLD_PARTITION trains and evaluates one fine classifier per gold coarse
// class (reproducing the per-class report rows); PIPELINED routes test
// records through a coarse model first and judges the routed fine prediction
// against the gold label.
FineReport fine_grained_eval(const std::vector<QuestionRecord>& train,
                             const std::vector<QuestionRecord>& test, FineMode mode,
                             const ApproachSpec& approach, const FeatureConfig& config,
                             const Lexicons& lexicons, const Taxonomy& taxonomy,
                             std::uint64_t seed);

}  // namespace benqc
