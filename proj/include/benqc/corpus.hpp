#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "benqc/taxonomy.hpp"

namespace benqc {

struct Token {
    std::string form;                // WX-notation surface form, non-empty
    std::string pos;                 // POS tag (NN, NNP, WQ, VM, JJ, SYM, ...), non-empty
    std::optional<std::string> chunk;  // "B-NP"/"I-NP"; absent or "O" = outside
    std::optional<std::string> ne;     // named-entity tag (Location, Person, ...)
};

enum class EndMarker : std::uint8_t { QUESTION_MARK, DANDA };

inline char end_marker_char(EndMarker m) { return m == EndMarker::QUESTION_MARK ? '?' : '|'; }

enum class Split : std::uint8_t { TRAIN, TEST };

struct QuestionRecord {
    std::string id;
    std::string text;
    std::vector<Token> tokens;  // non-empty; last token is the end marker
    EndMarker end_marker = EndMarker::QUESTION_MARK;
    std::optional<Label> label;  // required unless loaded with require_labels=false
    std::optional<Split> split;
};

struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what)
        : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};
struct InvalidLabel : Error {
    std::string id;
    InvalidLabel(std::string id_, const std::string& what)
        : Error("record " + id_ + ": " + what), id(std::move(id_)) {}
};
struct DuplicateId : Error {
    std::string id;
    explicit DuplicateId(std::string id_)
        : Error("duplicate record id: " + id_), id(std::move(id_)) {}
};
struct MissingSplitTag : Error {
    std::string id;
    explicit MissingSplitTag(std::string id_)
        : Error("record " + id_ + " has no split tag"), id(std::move(id_)) {}
};

struct LoadOptions {
    bool require_labels = true;
};

// JSON Lines loader. Validates every record (token and label invariants),
// preserves file order, rejects duplicate ids. Throws on the first problem.
std::vector<QuestionRecord> load_corpus(std::istream& in, const Taxonomy& taxonomy,
                                        const LoadOptions& opts = {});
std::vector<QuestionRecord> load_corpus(const std::string& path, const Taxonomy& taxonomy,
                                        const LoadOptions& opts = {});
std::vector<QuestionRecord> parse_corpus(std::string_view jsonl, const Taxonomy& taxonomy,
                                         const LoadOptions& opts = {});

struct Diagnostic {
    std::size_t line;
    std::string id;  // may be empty when the line did not parse
    std::string message;
};

// Collects every problem instead of throwing; valid records are returned.
std::vector<QuestionRecord> load_corpus_diagnostics(std::istream& in, const Taxonomy& taxonomy,
                                                    std::vector<Diagnostic>& out_diags,
                                                    const LoadOptions& opts = {});

std::string record_to_json_line(const QuestionRecord& rec);
void write_corpus(std::ostream& out, const std::vector<QuestionRecord>& records);

struct RatioPolicy {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct SplitResult {
    std::vector<QuestionRecord> train;
    std::vector<QuestionRecord> test;
};

// Seeded shuffled split: records are sorted by id, shuffled, and the first
// floor(fraction*n) become the training set (per class when stratified), so
// the partition does not depend on input file order.
SplitResult split_corpus(const std::vector<QuestionRecord>& records, const RatioPolicy& policy);

// Partition by each record's split tag; every record must carry one.
SplitResult split_corpus_explicit(const std::vector<QuestionRecord>& records);

struct ClassDistribution {
    struct Row {
        std::size_t train = 0;
        std::size_t test = 0;
        std::size_t overall = 0;
    };
    std::array<Row, kNumCoarseClasses> per_class;  // taxonomy row order
    Row total;

    std::string to_text() const;
};

ClassDistribution corpus_stats(const std::vector<QuestionRecord>& train,
                               const std::vector<QuestionRecord>& test);

struct AnnotationPair {
    std::string id;
    std::string label_a;
    std::string label_b;
};

struct DegenerateMarginals : Error {
    DegenerateMarginals() : Error("kappa undefined: expected agreement is 1 with imperfect observed agreement") {}
};

// Cohen's non-weighted kappa over two annotators' labels.
// kappa = (p_o - p_e) / (1 - p_e); returns exactly 1 when p_o == 1.
double cohen_kappa(const std::vector<AnnotationPair>& pairs);

// TSV reader: id<TAB>labelA<TAB>labelB, '#' comments allowed.
std::vector<AnnotationPair> load_annotation_pairs(std::istream& in);
std::vector<AnnotationPair> load_annotation_pairs(const std::string& path);

}  // namespace benqc
