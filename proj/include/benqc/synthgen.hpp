#pragma once

#include <array>

#include "benqc/corpus.hpp"

namespace benqc {

// Published per-class corpus statistics used as default generation targets
// and as the explicit-split reference manifest.
struct ReferenceCounts {
    std::array<std::size_t, kNumCoarseClasses> train;
    std::array<std::size_t, kNumCoarseClasses> test;
};
const ReferenceCounts& reference_corpus_counts();

struct SynthSpec {
    std::size_t n = 1100;
    // Coarse class mix; defaults to the reference corpus proportions.
    // Normalized internally; record counts are apportioned by largest
    // remainder so the realized counts match the proportions exactly up to
    // rounding.
    std::array<double, kNumCoarseClasses> class_distribution = {262, 104, 106, 116, 101, 104, 99, 116, 92};
    double label_noise = 0.0;  // in [0, 0.5): fraction of records with a flipped coarse label
    int signature_words_per_class = 6;   // disjoint class vocabulary size
    int fine_signature_words = 2;        // per fine class
    int confusable_vocab = 40;           // shared pool size
    double confusable_rate = 1.0;        // fill probability of each of 3 confusable slots
    double gazetteer_rate = 0.5;         // class-linked gazetteer word injection
    double ne_rate = 0.5;                // class-linked named-entity injection
    double interrogative_confusion = 0.1;  // chance of an off-class interrogative
    bool fine_labels = true;
    std::uint64_t seed = 0;
};

// Deterministic synthetic corpus: class-signature interrogatives and content
// words, shared confusable words, and annotations consistent with the
// feature extractors. Label noise flips coarse labels after generation.
std::vector<QuestionRecord> generate_corpus(const SynthSpec& spec);

// n=1100 corpus with explicit split tags matching the reference manifest
// exactly (train 769 / test 331).
std::vector<QuestionRecord> generate_reference_split_corpus(const SynthSpec& spec);

struct MiniSample {
    std::vector<QuestionRecord> records;
    std::size_t total = 0;
    std::array<std::size_t, kNumCoarseClasses> per_class{};
};

// The hand-annotated bundled sample (data/mini_sample.jsonl).
const MiniSample& bundled_sample();

}  // namespace benqc
