#pragma once

#include <array>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "benqc/learners.hpp"

namespace benqc {

struct DuplicateLearnerKind : Error {
    DuplicateLearnerKind() : Error("learner kinds must be distinct and cover NB, k-NB, RI, DT") {}
};

// --- bagging --------------------------------------------------------------------

struct BaggedModel {
    LearnerSpec base;
    std::uint64_t seed = 0;
    std::vector<Model> members;  // training order
};

// Trains `size` members, each on a bootstrap sample of n instances drawn with
// replacement. Member t depends only on (base, data, seed, t), so ensembles
// of different sizes share identical leading members.
BaggedModel bagging_train(const LearnerSpec& base, const Dataset& data, int size, std::uint64_t seed);

// Plurality vote; scores are vote fractions; ties break like majority_vote
// with members in training order as the priority.
Prediction bagging_predict(const BaggedModel& model, const SparseVector& vector);

// --- boosting (AdaBoost.M1) -------------------------------------------------------

enum class BoostHalt : std::uint8_t { MAX_ITERS, EPSILON_ZERO, EPSILON_GE_HALF };
std::string_view to_string(BoostHalt h);

struct BoostRound {
    Model model;
    double epsilon = 0.0;             // weighted training error of the round
    double beta = 0.0;                // epsilon / (1 - epsilon); vote weight is log(1/beta)
};

struct BoostModel {
    LearnerSpec base;
    int max_iters = 0;
    std::uint64_t seed = 0;
    std::vector<BoostRound> rounds;
    BoostHalt halt = BoostHalt::MAX_ITERS;
    // Set when the very first round had epsilon >= 0.5: no usable boosted
    // round exists and prediction falls back to the unweighted base model.
    std::optional<Model> fallback;

    bool no_usable_round() const { return fallback.has_value(); }
};

BoostModel adaboost_train(const LearnerSpec& base, const Dataset& data, int max_iters, std::uint64_t seed);

// argmax_c of the per-class sums of log(1/beta_t); scores are the normalized
// per-class weight sums.
Prediction adaboost_predict(const BoostModel& model, const SparseVector& vector);

// Evaluates the ensemble truncated to its first `rounds` rounds (sweep helper).
Prediction adaboost_predict_prefix(const BoostModel& model, const SparseVector& vector, std::size_t rounds);

// --- stacking ---------------------------------------------------------------------

struct StackingOptions {
    // 0 = paper protocol: meta features come from bases trained on the full
    // training set. k >= 2 = out-of-fold base predictions for the meta data.
    int meta_cv_folds = 0;
    // One-hot predicted labels by default; score vectors behind this flag.
    bool probability_encoding = false;
};

struct StackModel {
    std::array<LearnerSpec, 3> base_specs;
    LearnerSpec meta_spec;
    std::vector<Model> bases;  // trained on the full training set
    Model meta;
    int num_classes = 0;
    StackingOptions options;
};

// The three base kinds plus the meta kind must cover {NB, KNB, RI, DT}.
StackModel stacking_train(const std::array<LearnerSpec, 3>& bases, const LearnerSpec& meta,
                          const Dataset& data, const StackingOptions& options = {});

Prediction stacking_predict(const StackModel& model, const SparseVector& vector);

// Meta feature encoding: one block of K columns per base learner.
SparseVector encode_meta_features(const std::vector<Prediction>& base_predictions, int num_classes,
                                  bool probability_encoding);

// --- voting -----------------------------------------------------------------------

struct VotedModel {
    std::array<LearnerSpec, 4> specs;    // NB, KNB, RI, DT order
    std::array<Model, 4> members;
    std::vector<LearnerKind> priority;   // tie-break, highest first
};

// Default priority: DT > RI > k-NB > NB.
std::vector<LearnerKind> default_vote_priority();

VotedModel voting_train(const Dataset& data, const std::array<LearnerSpec, 4>& specs,
                        std::vector<LearnerKind> priority = default_vote_priority());

Prediction voting_predict(const VotedModel& model, const SparseVector& vector);

// Plurality label over predictions; a tie goes to the label voted for by the
// highest-priority voter among the tied labels. `voter_priority` lists voter
// indices from highest to lowest priority; empty means voting order.
int majority_vote(const std::vector<Prediction>& predictions,
                  const std::vector<std::size_t>& voter_priority = {});

// --- serialization ------------------------------------------------------------------

nlohmann::json bagged_to_json(const BaggedModel& m);
BaggedModel bagged_from_json(const nlohmann::json& j);
nlohmann::json boost_to_json(const BoostModel& m);
BoostModel boost_from_json(const nlohmann::json& j);
nlohmann::json stack_to_json(const StackModel& m);
StackModel stack_from_json(const nlohmann::json& j);
nlohmann::json voted_to_json(const VotedModel& m);
VotedModel voted_from_json(const nlohmann::json& j);

nlohmann::json learner_spec_to_json(const LearnerSpec& spec);
LearnerSpec learner_spec_from_json(const nlohmann::json& j);

}  // namespace benqc
