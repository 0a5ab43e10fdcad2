#include "doctest.h"

#include <cmath>
#include <nlohmann/json.hpp>

#include "benqc/learn_math.hpp"
#include "benqc/learners.hpp"
#include "benqc/rng.hpp"
#include "test_util.hpp"

using namespace benqc;
using namespace benqc::testutil;

namespace {

// Independent brute-force multinomial Bayes: dense vectors, direct
// probability products in long double, no log-space tricks. This is the
// oracle nb_posterior is checked against.
std::vector<double> nb_oracle(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                              int num_classes, double alpha, const std::vector<double>& query) {
    const std::size_t n = rows.size();
    const std::size_t dim = rows.front().size();
    std::vector<long double> posterior(num_classes, 0.0L);
    for (int c = 0; c < num_classes; ++c) {
        long double class_count = 0.0L;
        std::vector<long double> feature_count(dim, 0.0L);
        long double feature_total = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != c) continue;
            class_count += 1.0L;
            for (std::size_t j = 0; j < dim; ++j) {
                feature_count[j] += rows[i][j];
                feature_total += rows[i][j];
            }
        }
        if (class_count == 0.0L) continue;
        long double p = class_count / static_cast<long double>(n);
        for (std::size_t j = 0; j < dim; ++j) {
            const long double pj =
                (alpha + feature_count[j]) / (alpha * static_cast<long double>(dim) + feature_total);
            p *= std::pow(pj, static_cast<long double>(query[j]));
        }
        posterior[c] = p;
    }
    long double total = 0.0L;
    for (long double p : posterior) total += p;
    std::vector<double> out(num_classes);
    for (int c = 0; c < num_classes; ++c) out[c] = static_cast<double>(posterior[c] / total);
    return out;
}

// 2 classes x 2 records each over 3 features; priors are (0.5, 0.5).
const std::vector<std::vector<double>> kOracleRows = {
    {2, 1, 0}, {1, 0, 0}, {0, 1, 2}, {0, 0, 1}};
const std::vector<int> kOracleLabels = {0, 0, 1, 1};

Dataset oracle_dataset() { return make_dense_dataset(kOracleRows, kOracleLabels, 2); }

Dataset random_dataset(Rng& rng, std::size_t max_records, std::size_t max_features, int num_classes) {
    const std::size_t n = 2 + rng.uniform_index(max_records - 1);
    const std::size_t dim = 1 + rng.uniform_index(max_features);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(dim);
        for (std::size_t j = 0; j < dim; ++j)
            row[j] = rng.bernoulli(0.5) ? static_cast<double>(rng.uniform_index(4)) : 0.0;
        rows.push_back(std::move(row));
        labels.push_back(static_cast<int>(rng.uniform_index(num_classes)));
    }
    return make_dense_dataset(rows, labels, num_classes);
}

std::string model_bytes(const Model& m) { return model_to_json(m).dump(); }

}  // namespace

TEST_CASE("NB priors on the oracle corpus are (0.5, 0.5)") {
    const Model model = train(LearnerSpec{}, oracle_dataset());
    const NbModel& nb = std::get<NbModel>(model.params);
    CHECK(nb.class_totals[0] / nb.total_weight == 0.5);
    CHECK(nb.class_totals[1] / nb.total_weight == 0.5);
}

TEST_CASE("nb_posterior matches the brute-force oracle on the fixed corpus") {
    const Model model = train(LearnerSpec{}, oracle_dataset());
    const std::vector<double> query = {1, 1, 0};
    const auto expected = nb_oracle(kOracleRows, kOracleLabels, 2, 1.0, query);
    const auto actual = nb_posterior(model, dense_to_sparse(query));
    REQUIRE(actual.size() == expected.size());
    for (std::size_t c = 0; c < actual.size(); ++c)
        CHECK(actual[c] == doctest::Approx(expected[c]).epsilon(1e-9));
}

TEST_CASE("nb_posterior matches the oracle on randomized corpora") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        Rng trial_rng = rng.split("trial", trial);
        const int num_classes = 2 + static_cast<int>(trial_rng.uniform_index(3));
        Dataset data = random_dataset(trial_rng, 20, 10, num_classes);
        const Model model = train(LearnerSpec{}, data);

        std::vector<double> query(data.dim);
        for (std::size_t j = 0; j < query.size(); ++j)
            query[j] = static_cast<double>(trial_rng.uniform_index(3));

        std::vector<std::vector<double>> rows;
        for (const SparseVector& v : data.vectors) {
            std::vector<double> dense(data.dim, 0.0);
            for (const auto& [col, value] : v.entries) dense[col] = value;
            rows.push_back(std::move(dense));
        }
        const auto expected = nb_oracle(rows, data.labels, num_classes, 1.0, query);
        const auto actual = nb_posterior(model, dense_to_sparse(query));
        for (std::size_t c = 0; c < actual.size(); ++c)
            CHECK(actual[c] == doctest::Approx(expected[c]).epsilon(1e-9));
    }
}

TEST_CASE("huge smoothing collapses the posterior to the class priors") {
    LearnerSpec spec;
    spec.nb_alpha = 1e6;
    Dataset data = make_dense_dataset({{3, 0}, {0, 2}, {1, 1}}, {0, 1, 1}, 2);
    const Model model = train(spec, data);
    const auto scores = nb_posterior(model, dense_to_sparse({2, 1}));
    CHECK(scores[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(scores[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("empty vector yields the prior argmax") {
    Dataset data = make_dense_dataset({{1, 0}, {0, 1}, {2, 1}}, {1, 1, 0}, 2);
    const Model model = train(LearnerSpec{}, data);
    const Prediction pred = predict(model, dense_to_sparse({0, 0}));
    CHECK(pred.label == 1);
    CHECK(pred.scores[1] > pred.scores[0]);
}

TEST_CASE("single-class training yields a constant model for every learner") {
    Dataset data = make_dense_dataset({{1, 0}, {0, 2}, {1, 1}}, {2, 2, 2}, 4);
    for (LearnerKind kind : {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI, LearnerKind::DT}) {
        const Model model = train(LearnerSpec{}.with_kind(kind), data);
        for (const auto& probe : {std::vector<double>{0, 0}, {5, 5}, {1, 2}}) {
            const Prediction pred = predict(model, dense_to_sparse(probe));
            CHECK(pred.label == 2);
            CHECK(pred.scores[2] == 1.0);
        }
    }
}

TEST_CASE("training is deterministic: same spec and data give bit-identical parameters") {
    Rng rng(4242);
    Dataset data = random_dataset(rng, 30, 12, 3);
    data.numeric_columns = {0};
    for (LearnerKind kind : {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI, LearnerKind::DT}) {
        const LearnerSpec spec = LearnerSpec{}.with_kind(kind).with_seed(17);
        CHECK(model_bytes(train(spec, data)) == model_bytes(train(spec, data)));
    }
}

TEST_CASE("uniform explicit weights train bit-identically to no weights") {
    Rng rng(31337);
    Dataset data = random_dataset(rng, 24, 8, 3);
    data.numeric_columns = {1};
    Dataset weighted = data;
    weighted.weights.assign(data.size(), 1.0 / static_cast<double>(data.size()));
    for (LearnerKind kind : {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI, LearnerKind::DT}) {
        const LearnerSpec spec = LearnerSpec{}.with_kind(kind).with_seed(5);
        CHECK(model_bytes(train(spec, data)) == model_bytes(train(spec, weighted)));
    }
}

TEST_CASE("NB posterior is invariant under duplicating the training set (alpha = 0)") {
    Rng rng(2718);
    LearnerSpec spec;
    spec.nb_alpha = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        Rng trial_rng = rng.split("dup", trial);
        Dataset data = random_dataset(trial_rng, 12, 6, 2);
        Dataset doubled = data;
        for (std::size_t i = 0; i < data.size(); ++i) {
            doubled.vectors.push_back(data.vectors[i]);
            doubled.labels.push_back(data.labels[i]);
        }
        const Model single = train(spec, data);
        const Model twice = train(spec, doubled);
        std::vector<double> query(data.dim);
        for (std::size_t j = 0; j < query.size(); ++j)
            query[j] = static_cast<double>(trial_rng.uniform_index(3));
        const auto a = nb_posterior(single, dense_to_sparse(query));
        const auto b = nb_posterior(twice, dense_to_sparse(query));
        for (std::size_t c = 0; c < a.size(); ++c)
            CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-12));
    }
}

TEST_CASE("kernel density estimates") {
    // One class whose numeric feature (column 0) has a single value.
    Dataset data = make_dense_dataset({{4, 1}, {7, 1}}, {0, 1}, 2);
    data.numeric_columns = {0};
    const LearnerSpec spec = LearnerSpec{}.with_kind(LearnerKind::KNB);
    const Model model = train(spec, data);

    SUBCASE("peak of a single training value is 1/(h*sqrt(2*pi))") {
        const double h = 1e-6;  // sigma = 0 for one value, so the floor applies
        const double expected = 1.0 / (h * std::sqrt(2.0 * 3.14159265358979323846));
        CHECK(kde_density(model, 0, 0, 4.0) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("far queries hit the density floor") {
        CHECK(kde_density(model, 0, 0, 4.0 + 20.0) <= 1e-11);
    }
    SUBCASE("symmetry around the training values") {
        Dataset sym = make_dense_dataset({{4, 1}, {6, 1}, {0, 1}}, {0, 0, 1}, 2);
        sym.numeric_columns = {0};
        const Model m = train(spec, sym);
        // Class 0 has values {4, 6}: the mixture is symmetric about 5.
        CHECK(kde_density(m, 0, 0, 4.3) == doctest::Approx(kde_density(m, 0, 0, 5.7)).epsilon(1e-12));
    }
    SUBCASE("density-estimated columns are excluded from the multinomial part") {
        const NbModel& nb = std::get<NbModel>(model.params);
        CHECK(nb.count_column_total == 1);
        CHECK(nb.count_sums[0] == 1.0);
    }
}

TEST_CASE("uniform priors with symmetric likelihoods give a uniform posterior") {
    Dataset data = make_dense_dataset({{2, 1}, {1, 2}}, {0, 1}, 2);
    const Model model = train(LearnerSpec{}, data);
    const auto scores = nb_posterior(model, dense_to_sparse({1, 1}));
    CHECK(scores[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("prediction scores are a distribution and ties break low") {
    Rng rng(777);
    for (int trial = 0; trial < 8; ++trial) {
        Rng trial_rng = rng.split("scores", trial);
        Dataset data = random_dataset(trial_rng, 20, 6, 3);
        for (LearnerKind kind : {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI, LearnerKind::DT}) {
            const Model model = train(LearnerSpec{}.with_kind(kind), data);
            for (int probe = 0; probe < 5; ++probe) {
                std::vector<double> q(data.dim);
                for (auto& v : q) v = static_cast<double>(trial_rng.uniform_index(3));
                const Prediction pred = predict(model, dense_to_sparse(q));
                double total = 0.0;
                for (double s : pred.scores) {
                    CHECK(s >= 0.0);
                    total += s;
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
                for (int c = 0; c < pred.label; ++c) CHECK(pred.scores[c] < pred.scores[pred.label]);
            }
        }
    }
}

TEST_CASE("predict rejects vectors from a different feature space") {
    const Model model = train(LearnerSpec{}, oracle_dataset());
    SparseVector wrong;
    wrong.dim = 99;
    CHECK_THROWS_AS(predict(model, wrong), IndexMismatch);
    CHECK_THROWS_AS(train(LearnerSpec{}, Dataset{}), EmptyDataset);
}

// --- arithmetic oracles ---------------------------------------------------------

TEST_CASE("FOIL gain arithmetic") {
    CHECK(foil_gain(4, 0, 4, 4) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(foil_gain(0, 0, 4, 4) == 0.0);
    CHECK(foil_gain(2, 2, 4, 4) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("entropy and information gain arithmetic") {
    const std::vector<double> parent = {4, 4};
    CHECK(entropy_bits(parent) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> left = {4, 0}, right = {0, 4};
    CHECK(info_gain_bits(parent, left, right) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(split_info_bits(4, 4) == doctest::Approx(1.0).epsilon(1e-12));
}

// --- decision tree internals -------------------------------------------------------

TEST_CASE("choose_split picks a perfectly separating feature") {
    // Column 2 separates the classes; columns 0-1 are noise.
    Dataset data = make_dense_dataset({{1, 0, 0}, {0, 1, 0}, {1, 1, 3}, {0, 0, 3}}, {0, 0, 1, 1}, 2);
    const std::vector<std::uint32_t> rows = {0, 1, 2, 3};
    const auto split = dt_choose_split(data, rows, 1);
    REQUIRE(split.has_value());
    CHECK(split->column == 2);
    CHECK(split->threshold == doctest::Approx(1.5));
    CHECK(split->info_gain == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("choose_split reports no valid split when features are constant") {
    Dataset data = make_dense_dataset({{1, 2}, {1, 2}, {1, 2}}, {0, 1, 0}, 2);
    CHECK_FALSE(dt_choose_split(data, {0, 1, 2}, 1).has_value());
}

TEST_CASE("choose_split tie-break goes to the lowest column then threshold") {
    // Columns 0 and 1 both split perfectly.
    Dataset data = make_dense_dataset({{0, 0}, {1, 1}}, {0, 1}, 2);
    const auto split = dt_choose_split(data, {0, 1}, 1);
    REQUIRE(split.has_value());
    CHECK(split->column == 0);
}

TEST_CASE("unpruned tree with min_leaf=1 fits conflict-free training data exactly") {
    SUBCASE("xor needs zero-gain splits to make progress") {
        Dataset data = make_dense_dataset({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0}, 2);
        LearnerSpec spec = LearnerSpec{}.with_kind(LearnerKind::DT);
        spec.dt_min_leaf = 1;
        const Model model = train(spec, data);
        for (std::size_t i = 0; i < data.size(); ++i)
            CHECK(predict(model, data.vectors[i]).label == data.labels[i]);
    }
    SUBCASE("random conflict-free datasets") {
        Rng rng(606);
        for (int trial = 0; trial < 10; ++trial) {
            Rng trial_rng = rng.split("dt", trial);
            Dataset data = random_dataset(trial_rng, 40, 8, 3);
            // Deduplicate vectors to rule out label conflicts.
            std::map<std::string, int> seen;
            Dataset clean;
            clean.num_classes = data.num_classes;
            clean.dim = data.dim;
            clean.space_hash = data.space_hash;
            for (std::size_t i = 0; i < data.size(); ++i) {
                std::string key;
                for (const auto& [c, v] : data.vectors[i].entries)
                    key += std::to_string(c) + ":" + std::to_string(v) + ";";
                if (seen.emplace(key, data.labels[i]).second) {
                    clean.vectors.push_back(data.vectors[i]);
                    clean.labels.push_back(data.labels[i]);
                }
            }
            LearnerSpec spec = LearnerSpec{}.with_kind(LearnerKind::DT);
            spec.dt_min_leaf = 1;
            const Model model = train(spec, clean);
            for (std::size_t i = 0; i < clean.size(); ++i)
                CHECK(predict(model, clean.vectors[i]).label == clean.labels[i]);
        }
    }
}

// --- rule induction internals ---------------------------------------------------------

TEST_CASE("grow_rule stops at a single perfectly discriminating condition") {
    // Column 1 == 1 exactly for class-1 rows.
    Dataset data = make_dense_dataset({{1, 0}, {2, 0}, {0, 1}, {1, 1}}, {0, 0, 1, 1}, 2);
    const RiRule rule = ri_grow_rule(data, {0, 1, 2, 3}, 1);
    REQUIRE(rule.conditions.size() == 1);
    CHECK(rule.conditions[0].column == 1);
    CHECK(rule.conditions[0].threshold == doctest::Approx(0.5));
}

TEST_CASE("prune_rule drops a redundant final condition") {
    RiRule rule;
    rule.label = 1;
    rule.conditions = {RiCondition{1, 0.5}, RiCondition{0, 0.5}};
    // On the prune set the second condition changes nothing: precision is
    // identical with or without it, so it goes.
    Dataset prune = make_dense_dataset({{1, 1}, {1, 1}, {1, 0}, {0, 0}}, {1, 1, 0, 0}, 2);
    const RiRule pruned = ri_prune_rule(rule, prune, {0, 1, 2, 3}, 1);
    REQUIRE(pruned.conditions.size() == 1);
    CHECK(pruned.conditions[0].column == 1);

    // A condition that protects precision survives.
    RiRule keep;
    keep.label = 1;
    keep.conditions = {RiCondition{0, 0.5}, RiCondition{1, 0.5}};
    Dataset strict = make_dense_dataset({{1, 1}, {1, 1}, {1, 0}, {0, 0}}, {1, 1, 0, 0}, 2);
    const RiRule kept = ri_prune_rule(keep, strict, {0, 1, 2, 3}, 1);
    CHECK(kept.conditions.size() == 2);
}

TEST_CASE("rule induction learns a separable problem") {
    // Class 0 marked by column 0, class 1 by column 1; class 2 carries no
    // marker and must be the most frequent so it becomes the default.
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        const int cls = i < 15 ? 0 : i < 30 ? 1 : 2;
        std::vector<double> row(4, 0.0);
        if (cls < 2) row[cls] = 1.0 + static_cast<double>(rng.uniform_index(2));
        row[2 + rng.uniform_index(2)] = static_cast<double>(rng.uniform_index(2));  // noise
        rows.push_back(std::move(row));
        labels.push_back(cls);
    }
    Dataset data = make_dense_dataset(rows, labels, 3);
    const Model model = train(LearnerSpec{}.with_kind(LearnerKind::RI).with_seed(5), data);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (predict(model, data.vectors[i]).label == data.labels[i]) ++correct;
    CHECK(correct == data.size());
    const RiModel& ri = std::get<RiModel>(model.params);
    CHECK(ri.default_label == 2);
    CHECK(!ri.rules.empty());
}

TEST_CASE("model serialization round-trips losslessly for predictions") {
    Rng rng(14);
    Dataset data = random_dataset(rng, 25, 7, 3);
    data.numeric_columns = {2};
    for (LearnerKind kind : {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI, LearnerKind::DT}) {
        const Model model = train(LearnerSpec{}.with_kind(kind).with_seed(3), data);
        const Model loaded = model_from_json(model_to_json(model));
        CHECK(model_bytes(model) == model_bytes(loaded));
        for (int probe = 0; probe < 10; ++probe) {
            std::vector<double> q(data.dim);
            for (auto& v : q) v = static_cast<double>(rng.uniform_index(4));
            const Prediction a = predict(model, dense_to_sparse(q));
            const Prediction b = predict(loaded, dense_to_sparse(q));
            CHECK(a.label == b.label);
            CHECK(a.scores == b.scores);
        }
    }
}
