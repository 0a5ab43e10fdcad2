#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "benqc/builtin_data.hpp"
#include "benqc/eval.hpp"
#include "benqc/synthgen.hpp"
#include "test_util.hpp"

using namespace benqc;
using namespace benqc::testutil;

namespace {

std::string corpus_bytes(const std::vector<QuestionRecord>& records) {
    std::ostringstream out;
    write_corpus(out, records);
    return out.str();
}

double dt_test_accuracy(const std::vector<QuestionRecord>& records, const FeatureConfig& config,
                        std::uint64_t split_seed) {
    const SplitResult split = split_corpus(records, RatioPolicy{0.7, split_seed, true});
    const Lexicons& lex = Lexicons::builtin();
    const FeatureIndex index = build_feature_index(split.train, config, lex);
    const LabelCodec codec = LabelCodec::coarse();
    const Dataset data = make_dataset(split.train, index, config, lex, codec);
    const AnyModel model = train(LearnerSpec{}.with_kind(LearnerKind::DT), data);
    return evaluate(model, split.test, index, config, lex, codec).overall_accuracy;
}

}  // namespace

TEST_CASE("empty request gives an empty corpus") {
    SynthSpec spec;
    spec.n = 0;
    CHECK(generate_corpus(spec).empty());
}

TEST_CASE("default class mix reproduces the reference counts at n=1100") {
    SynthSpec spec;
    spec.n = 1100;
    spec.seed = 5;
    const auto records = generate_corpus(spec);
    REQUIRE(records.size() == 1100);
    std::array<std::size_t, kNumCoarseClasses> counts{};
    for (const QuestionRecord& rec : records) counts[static_cast<std::size_t>(rec.label->coarse)] += 1;
    const std::array<std::size_t, kNumCoarseClasses> expected = {262, 104, 106, 116, 101, 104, 99, 116, 92};
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) CHECK(counts[c] == expected[c]);
}

TEST_CASE("generation is deterministic under the seed") {
    SynthSpec spec;
    spec.n = 64;
    spec.seed = 123;
    spec.label_noise = 0.1;
    CHECK(corpus_bytes(generate_corpus(spec)) == corpus_bytes(generate_corpus(spec)));
    SynthSpec other = spec;
    other.seed = 124;
    CHECK(corpus_bytes(generate_corpus(spec)) != corpus_bytes(generate_corpus(other)));
}

TEST_CASE("generated corpora always pass corpus validation") {
    for (std::uint64_t seed : {0ull, 1ull, 9ull}) {
        SynthSpec spec;
        spec.n = 120;
        spec.seed = seed;
        spec.label_noise = 0.2;
        spec.confusable_rate = 0.8;
        spec.interrogative_confusion = 0.3;
        const auto records = generate_corpus(spec);
        const auto reloaded = parse_corpus(corpus_bytes(records), Taxonomy::builtin());
        CHECK(reloaded.size() == records.size());
    }
}

TEST_CASE("noise-free corpora with disjoint signatures are separable by a decision tree") {
    SynthSpec spec;
    spec.n = 400;
    spec.seed = 11;
    spec.label_noise = 0.0;
    spec.confusable_rate = 0.0;  // cross-class word sharing off: signatures disjoint
    spec.interrogative_confusion = 0.0;
    FeatureConfig lexical_only;
    CHECK(dt_test_accuracy(generate_corpus(spec), lexical_only, 3) == 1.0);
}

TEST_CASE("label noise does not improve decision-tree accuracy") {
    FeatureConfig config;
    std::vector<double> means;
    for (double noise : {0.0, 0.1, 0.2, 0.3}) {
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SynthSpec spec;
            spec.n = 250;
            spec.seed = 100 + seed;
            spec.label_noise = noise;
            total += dt_test_accuracy(generate_corpus(spec), config, seed);
        }
        means.push_back(total / 5.0);
    }
    for (std::size_t i = 1; i < means.size(); ++i) CHECK(means[i] <= means[i - 1] + 1e-12);
}

TEST_CASE("reference-split corpus matches the published manifest") {
    SynthSpec spec;
    spec.seed = 21;
    const auto records = generate_reference_split_corpus(spec);
    REQUIRE(records.size() == 1100);
    const SplitResult split = split_corpus_explicit(records);
    const ClassDistribution dist = corpus_stats(split.train, split.test);
    const ReferenceCounts& ref = reference_corpus_counts();
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
        CHECK(dist.per_class[c].train == ref.train[c]);
        CHECK(dist.per_class[c].test == ref.test[c]);
    }
}

TEST_CASE("spec validation") {
    SynthSpec spec;
    spec.label_noise = 0.5;
    CHECK_THROWS_AS(generate_corpus(spec), Error);
    SynthSpec bad_dist;
    bad_dist.class_distribution = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(generate_corpus(bad_dist), Error);
}

TEST_CASE("bundled sample: content and manifest") {
    const MiniSample& sample = bundled_sample();
    CHECK(sample.records.size() == sample.total);
    REQUIRE(sample.total >= 20);

    std::array<std::size_t, kNumCoarseClasses> counts{};
    for (const QuestionRecord& rec : sample.records)
        counts[static_cast<std::size_t>(rec.label->coarse)] += 1;
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) CHECK(counts[c] == sample.per_class[c]);
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) CHECK(counts[c] >= 1);

    auto has = [&](const char* text, CoarseClass coarse) {
        for (const QuestionRecord& rec : sample.records)
            if (rec.text == text && rec.label->coarse == coarse) return true;
        return false;
    };
    CHECK(has("gOdZa koWAyZa abashiwa ?", CoarseClass::LOC));
    CHECK(has("beVxa ki ?", CoarseClass::DEF));
    CHECK(has("AryasaByawAkeV keVna bExika saByawA balA hayZa ?", CoarseClass::REA));
    CHECK(has("ke gOdZa prawiRTA karena ?", CoarseClass::PER));

    // Every record carries a fine label and a split tag, and one exemplar
    // per coarse class comes from the examples table.
    for (const QuestionRecord& rec : sample.records) {
        CHECK(rec.label->fine.has_value());
        CHECK(rec.split.has_value());
    }
}

TEST_CASE("bundled sample data file matches the embedded copy") {
    std::ifstream in(std::string(BENQC_DATA_DIR) + "/mini_sample.jsonl", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == builtin_sample_jsonl());

    std::ifstream lex_in(std::string(BENQC_DATA_DIR) + "/interrogatives.tsv", std::ios::binary);
    std::ostringstream lex_buf;
    lex_buf << lex_in.rdbuf();
    CHECK(lex_buf.str() == builtin_interrogatives_text());

    std::ifstream gaz_in(std::string(BENQC_DATA_DIR) + "/gazetteers.tsv", std::ios::binary);
    std::ostringstream gaz_buf;
    gaz_buf << gaz_in.rdbuf();
    CHECK(gaz_buf.str() == builtin_gazetteers_text());
}
