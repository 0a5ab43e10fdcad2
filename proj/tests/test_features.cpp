#include "doctest.h"

#include <map>

#include "benqc/features.hpp"
#include "benqc/synthgen.hpp"
#include "test_util.hpp"

using namespace benqc;
using namespace benqc::testutil;

namespace {

const QuestionRecord& sample(const char* id) { return find_record(bundled_sample().records, id); }

double value_of(const FeatureCounts& counts, FeatureNs ns, const std::string& key) {
    auto it = counts.find(FeatureId{ns, key});
    return it == counts.end() ? 0.0 : it->second;
}

}  // namespace

TEST_CASE("word_shape") {
    CHECK(word_shape("2014") == WordShape::ALL_DIGITS);
    CHECK(word_shape("mig21") == WordShape::MIXED);
    CHECK(word_shape("BAikiM-2") == WordShape::MIXED);
    CHECK(word_shape("gOdZa") == WordShape::OTHER);
    CHECK(word_shape("?") == WordShape::OTHER);
}

TEST_CASE("wh_positions on the worked examples") {
    const Lexicons& lex = Lexicons::builtin();

    const auto first = wh_positions(sample("mini-001"), lex);
    REQUIRE(first.size() == 1);
    CHECK(first[0].token_index == 0);
    CHECK(first[0].form == "ke");
    CHECK(first[0].position == WhPosition::FIRST);

    const auto middle = wh_positions(sample("mini-003"), lex);
    REQUIRE(middle.size() == 1);
    CHECK(middle[0].token_index == 1);
    CHECK(middle[0].form == "koWAyZa");
    CHECK(middle[0].position == WhPosition::MIDDLE);

    const auto last = wh_positions(sample("mini-018"), lex);
    REQUIRE(last.size() == 1);
    CHECK(last[0].token_index == 3);
    CHECK(last[0].form == "kayZati");
    CHECK(last[0].position == WhPosition::LAST);
}

TEST_CASE("wh_type: simple, dual, and the no-interrogative error") {
    const Lexicons& lex = Lexicons::builtin();
    CHECK(wh_type(sample("mini-001"), lex) == WhType::SI);
    CHECK(wh_type(sample("mini-009"), lex) == WhType::DI);  // "ki ki"
    CHECK(wh_type(sample("mini-006"), lex) == WhType::CI);  // kiBAbeV
    const QuestionRecord plain = make_record("x", {{"gOdZa", "NNP"}, {"Cila", "VM"}});
    CHECK_THROWS_AS(wh_type(plain, lex), NoInterrogative);
    // Adjacent duplicates outrank a CI lexicon tag.
    const QuestionRecord dual_ci =
        make_record("y", {{"kiBAbeV", "WQ"}, {"kiBAbeV", "WQ"}, {"cala", "VM"}});
    CHECK(wh_type(dual_ci, lex) == WhType::DI);
}

TEST_CASE("lexical features of the first worked example") {
    const FeatureCounts counts = extract_lexical(sample("mini-001"), Lexicons::builtin());

    CHECK(value_of(counts, FeatureNs::WH_WORD, "ke") == 1.0);
    CHECK(value_of(counts, FeatureNs::WH_POS, "FIRST") == 1.0);
    CHECK(value_of(counts, FeatureNs::WH_TYPE, "SI") == 1.0);
    CHECK(value_of(counts, FeatureNs::QLEN, "") == 5.0);
    CHECK(value_of(counts, FeatureNs::END_MARKER, "?") == 1.0);
    CHECK(value_of(counts, FeatureNs::WORD_SHAPE, "OTHER") == 4.0);

    // WORD unigrams cover the four content tokens, once each.
    for (const char* w : {"ke", "gOdZa", "prawiRTA", "karena"})
        CHECK(value_of(counts, FeatureNs::WORD, w) == 1.0);
    CHECK(value_of(counts, FeatureNs::WORD, "?") == 0.0);

    // Nothing else: 6 named features + 4 unigrams.
    CHECK(counts.size() == 10);

    // Unigrams are switchable.
    const FeatureCounts no_words = extract_lexical(sample("mini-001"), Lexicons::builtin(), false);
    CHECK(no_words.size() == 6);
}

TEST_CASE("definition questions ending in danda emit the danda marker") {
    const FeatureCounts counts = extract_lexical(sample("mini-022"), Lexicons::builtin());
    CHECK(value_of(counts, FeatureNs::END_MARKER, "|") == 1.0);
    CHECK(value_of(counts, FeatureNs::END_MARKER, "?") == 0.0);
}

TEST_CASE("repeated words accumulate frequency") {
    const QuestionRecord rec = make_record("x", {{"ke", "WQ"}, {"barNa"}, {"barNa"}});
    const FeatureCounts counts = extract_lexical(rec, Lexicons::builtin());
    CHECK(value_of(counts, FeatureNs::WORD, "barNa") == 2.0);
}

TEST_CASE("head-word heuristic on the worked examples") {
    SUBCASE("interrogative first: first NP chunk after it") {
        const auto head = find_head_word(sample("mini-001"));
        REQUIRE(head.has_value());
        CHECK(head->text == "gOdZa");
    }
    SUBCASE("interrogative in the middle: immediate NP chunk before it") {
        const auto head = find_head_word(sample("mini-003"));
        REQUIRE(head.has_value());
        CHECK(head->text == "gOdZa");
    }
    SUBCASE("interrogative last: multi-token NP chunk before it") {
        const auto head = find_head_word(sample("mini-018"));
        REQUIRE(head.has_value());
        CHECK(head->text == "bAMlAxeSe arWanIwi kaleja");
        CHECK(head->begin == 0);
        CHECK(head->end == 3);
    }
    SUBCASE("no NP chunk on the required side") {
        const QuestionRecord rec = make_record("x", {{"ke", "WQ"}, {"karena", "VM"}});
        CHECK_FALSE(find_head_word(rec).has_value());
        // Middle/last positions look backwards only.
        const QuestionRecord behind =
            make_record("z", {{"abashiwa", "JJ"}, {"koWAyZa", "WQ"}, {"gOdZa", "NNP", "B-NP"}});
        CHECK_FALSE(find_head_word(behind).has_value());
    }
    SUBCASE("span tags form one NP chunk") {
        for (const QuestionRecord& rec : bundled_sample().records) {
            const auto head = find_head_word(rec);
            if (!head) continue;
            CHECK(rec.tokens[head->begin].chunk == "B-NP");
            for (std::size_t i = head->begin + 1; i < head->end; ++i)
                CHECK(rec.tokens[i].chunk == "I-NP");
        }
    }
}

TEST_CASE("syntactic features of the worked example") {
    const FeatureCounts counts = extract_syntactic(sample("mini-001"));
    CHECK(value_of(counts, FeatureNs::POS_TAG, "WQ") == 1.0);
    CHECK(value_of(counts, FeatureNs::POS_TAG, "NNP") == 1.0);
    CHECK(value_of(counts, FeatureNs::POS_TAG, "NN") == 1.0);
    CHECK(value_of(counts, FeatureNs::POS_TAG, "VM") == 1.0);
    // The end-marker token contributes no POS feature.
    CHECK(value_of(counts, FeatureNs::POS_TAG, "SYM") == 0.0);
    CHECK(value_of(counts, FeatureNs::HEAD_WORD, "gOdZa") == 1.0);
    CHECK(value_of(counts, FeatureNs::TAGGED_UNIGRAM, "gOdZa/NNP") == 1.0);
    CHECK(value_of(counts, FeatureNs::TAGGED_UNIGRAM, "ke/WQ") == 1.0);

    const QuestionRecord two_nn = make_record("x", {{"ke", "WQ"}, {"barNa"}, {"Pala"}});
    CHECK(value_of(extract_syntactic(two_nn), FeatureNs::POS_TAG, "NN") == 2.0);

    // No NP chunk and WQ first: no head-word feature.
    const QuestionRecord no_np = make_record("y", {{"ke", "WQ"}, {"karena", "VM"}});
    CHECK(extract_syntactic(no_np).count(FeatureId{FeatureNs::HEAD_WORD, ""}) == 0);
    for (const auto& [id, value] : extract_syntactic(no_np)) CHECK(id.ns != FeatureNs::HEAD_WORD);
}

TEST_CASE("semantic features: gazetteers and named entities") {
    const FeatureCounts human = extract_semantic(sample("mini-010"), Lexicons::builtin());
    CHECK(value_of(human, FeatureNs::RELATED, "human-authority") == 1.0);
    CHECK(value_of(human, FeatureNs::NE, "Location") == 1.0);

    const FeatureCounts located = extract_semantic(sample("mini-001"), Lexicons::builtin());
    CHECK(value_of(located, FeatureNs::NE, "Location") == 1.0);

    const QuestionRecord plain = make_record("x", {{"ke", "WQ"}, {"karena", "VM"}});
    CHECK(extract_semantic(plain, Lexicons::builtin()).empty());
}

TEST_CASE("feature index: group gating, coarse-class block, determinism") {
    const auto& records = bundled_sample().records;
    const Lexicons& lex = Lexicons::builtin();

    FeatureConfig lexical_only;
    const FeatureIndex fl = build_feature_index(records, lexical_only, lex);
    for (const FeatureId& id : fl.features()) {
        CHECK(id.ns != FeatureNs::POS_TAG);
        CHECK(id.ns != FeatureNs::NE);
        CHECK(id.ns != FeatureNs::COARSE_CLASS);
    }

    FeatureConfig with_coarse = lexical_only;
    with_coarse.include_coarse_class = true;
    const FeatureIndex flc = build_feature_index(records, with_coarse, lex);
    std::size_t coarse_features = 0;
    for (const FeatureId& id : flc.features())
        if (id.ns == FeatureNs::COARSE_CLASS) ++coarse_features;
    CHECK(coarse_features == 9);
    CHECK(flc.size() == fl.size() + 9);

    const FeatureIndex again = build_feature_index(records, lexical_only, lex);
    CHECK(again.features() == fl.features());
    CHECK(again.space_hash() == fl.space_hash());

    // Columns are gapless and sorted by (namespace, key).
    for (std::uint32_t i = 0; i < fl.size(); ++i) CHECK(fl.column(fl.feature(i)) == i);
    for (std::uint32_t i = 1; i < fl.size(); ++i) CHECK(fl.feature(i - 1) < fl.feature(i));

    // A group with nothing to emit yields an empty space.
    FeatureConfig semantic_only;
    semantic_only.lexical = false;
    semantic_only.semantic = true;
    const std::vector<QuestionRecord> bland = {make_record("x", {{"ke", "WQ"}, {"karena", "VM"}})};
    CHECK_THROWS_AS(build_feature_index(bland, semantic_only, lex), EmptyFeatureSpace);
}

TEST_CASE("vectorize: indexing, OOV policy, coarse hint") {
    const auto& records = bundled_sample().records;
    const Lexicons& lex = Lexicons::builtin();
    FeatureConfig config;
    config.syntactic = config.semantic = true;

    const FeatureIndex index = build_feature_index(records, config, lex);

    SUBCASE("training records drop nothing") {
        for (const QuestionRecord& rec : records) {
            const FeatureCounts counts = extract_features(rec, config, lex);
            const SparseVector vec = vectorize(rec, index, config, lex);
            CHECK(vec.nnz() == counts.size());
            for (const auto& [id, value] : counts) {
                REQUIRE(index.column(id).has_value());
                CHECK(vec.get(*index.column(id)) == value);
            }
        }
    }
    SUBCASE("unseen features are dropped; an all-OOV record gives a vector with only shared features") {
        const QuestionRecord alien = make_record("x", {{"zzz", "XX"}, {"qqq", "XX"}});
        const SparseVector vec = vectorize(alien, index, config, lex);
        // No interrogative, unseen words/POS: only QLEN and shape/marker
        // features survive the index intersection.
        for (const auto& [col, value] : vec.entries) {
            const FeatureNs ns = index.feature(col).ns;
            CHECK((ns == FeatureNs::QLEN || ns == FeatureNs::END_MARKER ||
                   ns == FeatureNs::WORD_SHAPE));
        }
    }
    SUBCASE("a frozen empty intersection really is empty") {
        FeatureConfig word_only;
        word_only.word_unigrams = true;
        const std::vector<QuestionRecord> train = {make_record("t", {{"ke", "WQ"}, {"gOdZa", "NNP"}})};
        const FeatureIndex small = build_feature_index(train, word_only, lex);
        const QuestionRecord alien = make_record("x", {{"zzz", "XX"}, {"qqq", "XX"}}, "|");
        const SparseVector vec = vectorize(alien, small, word_only, lex);
        // Same QLEN (different value would still map) but end marker and all
        // words differ; check no stored zeros and lookups of absent columns.
        for (const auto& [col, value] : vec.entries) CHECK(value != 0.0);
    }
    SUBCASE("coarse hint") {
        FeatureConfig hinted = config;
        hinted.include_coarse_class = true;
        const FeatureIndex hinted_index = build_feature_index(records, hinted, lex);
        CHECK_THROWS_AS(vectorize(records[0], hinted_index, hinted, lex), MissingCoarseHint);
        const SparseVector vec = vectorize(records[0], hinted_index, hinted, lex, CoarseClass::PER);
        const auto col = hinted_index.column(FeatureId{FeatureNs::COARSE_CLASS, "PER"});
        REQUIRE(col.has_value());
        CHECK(vec.get(*col) == 1.0);
    }
}

TEST_CASE("group monotonicity of nonzero sets under a shared index") {
    const Lexicons& lex = Lexicons::builtin();
    SynthSpec spec;
    spec.n = 40;
    spec.seed = 21;
    const auto records = generate_corpus(spec);

    FeatureConfig full;
    full.syntactic = full.semantic = true;
    const FeatureIndex index = build_feature_index(records, full, lex);

    FeatureConfig fl;
    FeatureConfig fls;
    fls.syntactic = true;

    for (const QuestionRecord& rec : records) {
        const SparseVector v1 = vectorize(rec, index, fl, lex);
        const SparseVector v2 = vectorize(rec, index, fls, lex);
        const SparseVector v3 = vectorize(rec, index, full, lex);
        auto subset = [](const SparseVector& a, const SparseVector& b) {
            for (const auto& [col, value] : a.entries)
                if (b.get(col) == 0.0) return false;
            return true;
        };
        CHECK(subset(v1, v2));
        CHECK(subset(v2, v3));
    }
}

TEST_CASE("extractors are pure") {
    const QuestionRecord& rec = sample("mini-002");
    const Lexicons& lex = Lexicons::builtin();
    CHECK(extract_lexical(rec, lex) == extract_lexical(rec, lex));
    CHECK(extract_syntactic(rec) == extract_syntactic(rec));
    CHECK(extract_semantic(rec, lex) == extract_semantic(rec, lex));
}

TEST_CASE("lexicon files parse and reject malformed lines") {
    const Lexicons lex = Lexicons::parse("ke\tSI\nkiBAbeV\tCI\n# note\n", "date\txina\nfood\tPala\n");
    CHECK(lex.interrogative_type("ke") == WhType::SI);
    CHECK(lex.interrogative_type("kiBAbeV") == WhType::CI);
    CHECK_FALSE(lex.interrogative_type("zzz").has_value());
    CHECK(lex.related_lists("xina") == std::vector<std::string>{"date"});
    CHECK(lex.related_lists("zzz").empty());

    CHECK_THROWS_AS(Lexicons::parse("ke SI\n", ""), ParseError);
    CHECK_THROWS_AS(Lexicons::parse("ke\tQQ\n", ""), ParseError);
    CHECK_THROWS_AS(Lexicons::parse("", "date xina\n"), ParseError);

    CHECK(Lexicons::builtin().interrogative_count() == 26);
}
