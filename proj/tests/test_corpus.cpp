#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "benqc/corpus.hpp"
#include "benqc/rng.hpp"
#include "benqc/synthgen.hpp"
#include "test_util.hpp"

using namespace benqc;
using namespace benqc::testutil;

namespace {

const char* kThreeRecords =
    R"({"id": "a", "text": "ke x ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "x", "pos": "NN"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "PER"})"
    "\n"
    R"({"id": "b", "text": "ki |", "tokens": [{"form": "ki", "pos": "WQ"}, {"form": "|", "pos": "SYM"}], "end_marker": "|", "coarse": "DEF", "fine": "TERM"})"
    "\n"
    R"({"id": "c", "text": "koWAyZa x ?", "tokens": [{"form": "koWAyZa", "pos": "WQ"}, {"form": "x", "pos": "NN"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "LOC", "split": "test"})"
    "\n";

std::vector<QuestionRecord> one_class_records(std::size_t n) {
    std::vector<QuestionRecord> records;
    for (std::size_t i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "r%03zu", i);
        records.push_back(make_record(id, {{"ke", "WQ"}, {"w" + std::to_string(i)}}));
    }
    return records;
}

}  // namespace

TEST_CASE("load_corpus keeps file order and validates") {
    const auto records = parse_corpus(kThreeRecords, Taxonomy::builtin());
    REQUIRE(records.size() == 3);
    CHECK(records[0].id == "a");
    CHECK(records[1].id == "b");
    CHECK(records[2].id == "c");
    CHECK(records[1].end_marker == EndMarker::DANDA);
    CHECK(records[1].label->fine == "TERM");
    CHECK(records[2].split == Split::TEST);
    CHECK_FALSE(records[0].split.has_value());
}

TEST_CASE("load_corpus error paths") {
    const Taxonomy& tax = Taxonomy::builtin();

    SUBCASE("fine class under the wrong coarse class") {
        const char* line =
            R"({"id": "a", "text": "ke ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "METH", "fine": "CITY"})";
        CHECK_THROWS_AS(parse_corpus(line, tax), InvalidLabel);
    }
    SUBCASE("duplicate ids") {
        const std::string two = std::string(kThreeRecords) +
            R"({"id": "a", "text": "ke ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "PER"})" "\n";
        CHECK_THROWS_AS(parse_corpus(two, tax), DuplicateId);
    }
    SUBCASE("invalid JSON carries the line number") {
        const std::string bad = std::string(kThreeRecords) + "{oops\n";
        try {
            parse_corpus(bad, tax);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 4);
        }
    }
    SUBCASE("token invariants") {
        CHECK_THROWS_AS(parse_corpus(
            R"({"id": "a", "text": "?", "tokens": [], "end_marker": "?", "coarse": "PER"})", tax),
            ParseError);
        CHECK_THROWS_AS(parse_corpus(
            R"({"id": "a", "text": "ke", "tokens": [{"form": "ke", "pos": "WQ"}], "end_marker": "?", "coarse": "PER"})", tax),
            ParseError);
        CHECK_THROWS_AS(parse_corpus(
            R"({"id": "a", "text": "ke .", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": ".", "pos": "SYM"}], "end_marker": ".", "coarse": "PER"})", tax),
            ParseError);
        CHECK_THROWS_AS(parse_corpus(
            R"({"id": "a", "text": "ke ?", "tokens": [{"form": "ke", "pos": ""}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "PER"})", tax),
            ParseError);
    }
    SUBCASE("missing label accepted only when labels are optional") {
        const char* line =
            R"({"id": "a", "text": "ke ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "?", "pos": "SYM"}], "end_marker": "?"})";
        CHECK_THROWS_AS(parse_corpus(line, tax), InvalidLabel);
        LoadOptions opts;
        opts.require_labels = false;
        const auto records = parse_corpus(line, tax, opts);
        REQUIRE(records.size() == 1);
        CHECK_FALSE(records[0].label.has_value());
    }
}

TEST_CASE("diagnostics collector reports every problem") {
    const std::string bad = std::string(kThreeRecords) +
        "{oops\n" +
        R"({"id": "a", "text": "ke ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "PER"})" "\n" +
        R"({"id": "d", "text": "ke ?", "tokens": [{"form": "ke", "pos": "WQ"}, {"form": "?", "pos": "SYM"}], "end_marker": "?", "coarse": "METH", "fine": "CITY"})" "\n";
    std::istringstream in(bad);
    std::vector<Diagnostic> diags;
    const auto records = load_corpus_diagnostics(in, Taxonomy::builtin(), diags);
    CHECK(records.size() == 3);
    REQUIRE(diags.size() == 3);
    CHECK(diags[0].line == 4);
    CHECK(diags[1].id == "a");
    CHECK(diags[2].id == "d");
}

TEST_CASE("bundled mini sample loads and contains the reference question") {
    const MiniSample& sample = bundled_sample();
    REQUIRE(sample.records.size() >= 20);
    const QuestionRecord& rec = find_record(sample.records, "mini-001");
    CHECK(rec.text == "ke gOdZa prawiRTA karena ?");
    CHECK(rec.label->coarse == CoarseClass::PER);
}

TEST_CASE("record JSON round-trip") {
    const auto records = parse_corpus(kThreeRecords, Taxonomy::builtin());
    std::ostringstream out;
    write_corpus(out, records);
    const auto again = parse_corpus(out.str(), Taxonomy::builtin());
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(again[i].id == records[i].id);
        CHECK(again[i].label == records[i].label);
        CHECK(again[i].tokens.size() == records[i].tokens.size());
        CHECK(again[i].split == records[i].split);
    }
}

TEST_CASE("explicit split reproduces the reference manifest") {
    SynthSpec spec;
    spec.seed = 7;
    const auto corpus = generate_reference_split_corpus(spec);
    const SplitResult split = split_corpus_explicit(corpus);
    CHECK(split.train.size() == 769);
    CHECK(split.test.size() == 331);
    CHECK(split.train.size() + split.test.size() == 1100);

    const ClassDistribution dist = corpus_stats(split.train, split.test);
    CHECK(dist.per_class[0].train == 172);  // Person row
    CHECK(dist.per_class[0].test == 90);
    CHECK(dist.per_class[0].overall == 262);
    CHECK(dist.total.train == 769);
    CHECK(dist.total.test == 331);
    CHECK(dist.total.overall == 1100);
}

TEST_CASE("explicit split requires tags on every record") {
    auto records = one_class_records(3);
    records[1].split = Split::TRAIN;
    CHECK_THROWS_AS(split_corpus_explicit(records), MissingSplitTag);
}

TEST_CASE("ratio split: floor sizing, determinism, order independence") {
    const auto records = one_class_records(10);
    RatioPolicy policy{0.7, 1, true};

    const SplitResult a = split_corpus(records, policy);
    CHECK(a.train.size() == 7);
    CHECK(a.test.size() == 3);

    const SplitResult b = split_corpus(records, policy);
    auto ids = [](const std::vector<QuestionRecord>& v) {
        std::vector<std::string> out;
        for (const auto& r : v) out.push_back(r.id);
        return out;
    };
    CHECK(ids(a.train) == ids(b.train));
    CHECK(ids(a.test) == ids(b.test));

    // Input order must not matter: records are sorted by id before shuffling.
    auto reversed = records;
    std::reverse(reversed.begin(), reversed.end());
    const SplitResult c = split_corpus(reversed, policy);
    auto sorted_ids = [&](const std::vector<QuestionRecord>& v) {
        auto out = ids(v);
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(sorted_ids(c.train) == sorted_ids(a.train));
}

TEST_CASE("ratio split partitions for arbitrary seeds and fractions") {
    SynthSpec spec;
    spec.n = 83;
    spec.seed = 11;
    const auto records = generate_corpus(spec);
    for (double fraction : {0.3, 0.5, 0.7, 0.9}) {
        for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
            for (bool stratified : {false, true}) {
                const SplitResult split = split_corpus(records, RatioPolicy{fraction, seed, stratified});
                CHECK(split.train.size() + split.test.size() == records.size());
                std::set<std::string> seen;
                for (const auto& r : split.train) seen.insert(r.id);
                for (const auto& r : split.test) {
                    CHECK(seen.count(r.id) == 0);
                    seen.insert(r.id);
                }
                CHECK(seen.size() == records.size());
                if (!stratified)
                    CHECK(split.train.size() ==
                          static_cast<std::size_t>(fraction * static_cast<double>(records.size())));
            }
        }
    }
    CHECK_THROWS_AS(split_corpus(records, RatioPolicy{0.0, 0, false}), Error);
    CHECK_THROWS_AS(split_corpus(records, RatioPolicy{1.0, 0, false}), Error);
}

TEST_CASE("corpus_stats totals equal the record counts") {
    SynthSpec spec;
    spec.n = 57;
    spec.seed = 3;
    const auto records = generate_corpus(spec);
    const SplitResult split = split_corpus(records, RatioPolicy{0.6, 9, false});
    const ClassDistribution dist = corpus_stats(split.train, split.test);
    CHECK(dist.total.train == split.train.size());
    CHECK(dist.total.test == split.test.size());
    std::size_t train_sum = 0, test_sum = 0, overall_sum = 0;
    for (const auto& row : dist.per_class) {
        train_sum += row.train;
        test_sum += row.test;
        overall_sum += row.overall;
        CHECK(row.overall == row.train + row.test);
    }
    CHECK(train_sum == dist.total.train);
    CHECK(test_sum == dist.total.test);
    CHECK(overall_sum == dist.total.overall);

    const ClassDistribution empty_test = corpus_stats(split.train, {});
    for (const auto& row : empty_test.per_class) CHECK(row.test == 0);
}

TEST_CASE("cohen_kappa: perfect agreement is exactly 1") {
    std::vector<AnnotationPair> pairs;
    for (int i = 0; i < 17; ++i)
        pairs.push_back(AnnotationPair{std::to_string(i), i % 2 ? "PER" : "LOC", i % 2 ? "PER" : "LOC"});
    CHECK(cohen_kappa(pairs) == 1.0);
}

TEST_CASE("cohen_kappa: constructed confusion counts give 0.8") {
    // 2 classes; both=X 45, A=X/B=Y 5, A=Y/B=X 5, both=Y 45.
    // By hand: p_o = 90/100 = 0.9; marginals are 50/50 for both annotators,
    // so p_e = 0.5*0.5 + 0.5*0.5 = 0.5; kappa = (0.9-0.5)/(1-0.5) = 0.8.
    std::vector<AnnotationPair> pairs;
    int id = 0;
    auto add = [&](const char* a, const char* b, int count) {
        for (int i = 0; i < count; ++i) pairs.push_back(AnnotationPair{std::to_string(id++), a, b});
    };
    add("X", "X", 45);
    add("X", "Y", 5);
    add("Y", "X", 5);
    add("Y", "Y", 45);
    CHECK(cohen_kappa(pairs) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("cohen_kappa: independent uniform annotations stay near zero") {
    Rng rng(2024);
    const char* labels[] = {"PER", "ORG", "LOC", "TEM", "NUM", "METH", "REA", "DEF", "MISC"};
    std::vector<AnnotationPair> pairs;
    for (int i = 0; i < 10000; ++i)
        pairs.push_back(AnnotationPair{std::to_string(i), labels[rng.uniform_index(9)],
                                       labels[rng.uniform_index(9)]});
    CHECK(std::abs(cohen_kappa(pairs)) <= 0.05);
}

TEST_CASE("cohen_kappa is symmetric in the annotators") {
    Rng rng(5);
    const char* labels[] = {"A", "B", "C"};
    std::vector<AnnotationPair> ab, ba;
    for (int i = 0; i < 500; ++i) {
        const char* a = labels[rng.uniform_index(3)];
        const char* b = labels[rng.uniform_index(3)];
        ab.push_back(AnnotationPair{std::to_string(i), a, b});
        ba.push_back(AnnotationPair{std::to_string(i), b, a});
    }
    CHECK(cohen_kappa(ab) == doctest::Approx(cohen_kappa(ba)).epsilon(1e-15));
}

TEST_CASE("annotation pair TSV") {
    std::istringstream in("# comment\nq1\tPER\tPER\nq2\tLOC\tPER\n");
    const auto pairs = load_annotation_pairs(in);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].id == "q1");
    CHECK(pairs[1].label_b == "PER");

    std::istringstream bad("q1\tPER\n");
    CHECK_THROWS_AS(load_annotation_pairs(bad), ParseError);
    CHECK_THROWS_AS(cohen_kappa({}), Error);
}
