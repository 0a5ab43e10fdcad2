#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "benqc/corpus.hpp"

namespace benqc {

// Feature namespaces, in the canonical sort order used by FeatureIndex.
enum class FeatureNs : std::uint8_t {
    WORD,            // unigram counts over content tokens
    WH_WORD,         // interrogative surface forms
    WH_POS,          // interrogative position class: FIRST/MIDDLE/LAST
    WH_TYPE,         // SI/DI/CI
    QLEN,            // question length (numeric-valued, counts all tokens)
    END_MARKER,      // "?" or "|"
    WORD_SHAPE,      // ALL_DIGITS/MIXED/OTHER counts over content tokens
    POS_TAG,         // bag of POS tags over content tokens
    TAGGED_UNIGRAM,  // "form/POS" counts
    HEAD_WORD,       // head-word span text
    RELATED,         // gazetteer list names
    NE,              // named-entity tags
    COARSE_CLASS,    // coarse-class hint for fine-grained models
};

std::string_view to_string(FeatureNs ns);

struct FeatureId {
    FeatureNs ns;
    std::string key;

    auto operator<=>(const FeatureId&) const = default;
    std::string str() const;  // "WORD:ke", "QLEN", ...
};

using FeatureValue = std::pair<FeatureId, double>;
using FeatureCounts = std::map<FeatureId, double>;

enum class WordShape : std::uint8_t { ALL_DIGITS, MIXED, OTHER };
std::string_view to_string(WordShape s);

enum class WhPosition : std::uint8_t { FIRST, MIDDLE, LAST };
std::string_view to_string(WhPosition p);

enum class WhType : std::uint8_t { SI, DI, CI };
std::string_view to_string(WhType t);

struct NoInterrogative : Error {
    explicit NoInterrogative(const std::string& id)
        : Error("record " + id + " contains no interrogative token") {}
};
struct EmptyFeatureSpace : Error {
    EmptyFeatureSpace() : Error("no features produced from the training set") {}
};
struct MissingCoarseHint : Error {
    MissingCoarseHint() : Error("coarse-class feature enabled but no coarse hint supplied") {}
};
struct IndexFrozen : Error {
    IndexFrozen() : Error("feature index is frozen") {}
};

// Interrogative lexicon and gazetteers.
class Lexicons {
public:
    static Lexicons parse(std::string_view interrogatives_tsv, std::string_view gazetteers_tsv);
    static Lexicons load(const std::string& interrogatives_path, const std::string& gazetteers_path);
    static const Lexicons& builtin();

    std::optional<WhType> interrogative_type(const std::string& form) const;
    // Gazetteer list names containing `form` (exact full-token match).
    std::vector<std::string> related_lists(const std::string& form) const;

    std::size_t interrogative_count() const { return interrogatives_.size(); }
    const std::map<std::string, WhType>& interrogatives() const { return interrogatives_; }
    const std::map<std::string, std::vector<std::string>>& gazetteers() const { return gazetteers_; }

private:
    std::map<std::string, WhType> interrogatives_;
    std::map<std::string, std::vector<std::string>> gazetteers_;  // listname -> sorted words
};

struct FeatureConfig {
    bool lexical = true;     // f_L
    bool syntactic = false;  // f_S
    bool semantic = false;   // f_M
    bool word_unigrams = true;  // WORD features within f_L (switchable)
    bool include_coarse_class = false;

    static FeatureConfig from_set_name(std::string_view name);  // "fl", "fl+fs", "fl+fs+fm"
    std::string set_name() const;
};

// Frozen bidirectional feature <-> column map.
class FeatureIndex {
public:
    FeatureIndex() = default;

    std::size_t size() const { return features_.size(); }
    const std::vector<FeatureId>& features() const { return features_; }
    std::optional<std::uint32_t> column(const FeatureId& id) const;
    const FeatureId& feature(std::uint32_t column) const { return features_.at(column); }
    std::uint64_t space_hash() const { return hash_; }

    // Columns whose values are measurements rather than counts (QLEN).
    std::vector<std::uint32_t> numeric_columns() const;

    static FeatureIndex from_features(std::vector<FeatureId> features);

private:
    std::vector<FeatureId> features_;                // sorted by (ns, key)
    std::map<FeatureId, std::uint32_t> to_column_;
    std::uint64_t hash_ = 0;
};

struct SparseVector {
    std::vector<std::pair<std::uint32_t, double>> entries;  // strictly increasing columns, no zeros
    std::uint32_t dim = 0;

    double get(std::uint32_t column) const;
    std::size_t nnz() const { return entries.size(); }
};

// --- single-feature helpers -------------------------------------------------

WordShape word_shape(std::string_view form);

bool is_interrogative(const Token& token, const Lexicons& lexicons);

struct WhOccurrence {
    std::size_t token_index;
    std::string form;
    WhPosition position;
};
std::vector<WhOccurrence> wh_positions(const QuestionRecord& record, const Lexicons& lexicons);

WhType wh_type(const QuestionRecord& record, const Lexicons& lexicons);

struct TokenSpan {
    std::size_t begin;  // inclusive token index
    std::size_t end;    // exclusive
    std::string text;   // forms joined by ' '
};
// Position-based head-word heuristic over NP chunks. Absence is a valid
// outcome (no NP chunk on the required side of the interrogative).
std::optional<TokenSpan> find_head_word(const QuestionRecord& record);

// --- group extractors (pure) -------------------------------------------------

FeatureCounts extract_lexical(const QuestionRecord& record, const Lexicons& lexicons,
                              bool word_unigrams = true);
FeatureCounts extract_syntactic(const QuestionRecord& record);
FeatureCounts extract_semantic(const QuestionRecord& record, const Lexicons& lexicons);

FeatureCounts extract_features(const QuestionRecord& record, const FeatureConfig& config,
                               const Lexicons& lexicons);

// Index over the union of features emitted on the training records by the
// enabled groups; adds all 9 COARSE_CLASS features when configured.
FeatureIndex build_feature_index(const std::vector<QuestionRecord>& train_records,
                                 const FeatureConfig& config, const Lexicons& lexicons);

// Features absent from the index are dropped (test-time OOV policy).
SparseVector vectorize(const QuestionRecord& record, const FeatureIndex& index,
                       const FeatureConfig& config, const Lexicons& lexicons,
                       std::optional<CoarseClass> coarse_hint = std::nullopt);

}  // namespace benqc
