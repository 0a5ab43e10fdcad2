#include "benqc/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "benqc/rng.hpp"

namespace benqc {

using nlohmann::json;

double accuracy(std::span<const int> predicted, std::span<const int> gold) {
    if (predicted.size() != gold.size()) throw LengthMismatch();
    if (predicted.empty()) throw EmptyInput();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == gold[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

// --- LabelCodec -----------------------------------------------------------------

LabelCodec LabelCodec::coarse() {
    LabelCodec codec;
    for (CoarseClass c : coarse_classes()) codec.names_.emplace_back(to_string(c));
    return codec;
}

LabelCodec LabelCodec::fine(const Taxonomy& taxonomy, CoarseClass parent) {
    LabelCodec codec;
    codec.parent_ = parent;
    for (const FineClass& f : taxonomy.fine_classes(parent)) codec.names_.push_back(f.name);
    return codec;
}

int LabelCodec::index_of(const Label& label) const {
    if (!parent_) return static_cast<int>(label.coarse);
    if (label.coarse != *parent_)
        throw InvalidLabel(label.str(), "label outside the fine codec's coarse class");
    if (!label.fine) throw InvalidLabel(label.str(), "fine-level evaluation needs fine labels");
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == *label.fine) return static_cast<int>(i);
    throw InvalidLabel(label.str(), "fine class not in taxonomy");
}

Dataset make_dataset(const std::vector<QuestionRecord>& records, const FeatureIndex& index,
                     const FeatureConfig& config, const Lexicons& lexicons, const LabelCodec& codec) {
    Dataset data;
    data.num_classes = codec.num_classes();
    data.dim = static_cast<std::uint32_t>(index.size());
    data.space_hash = index.space_hash();
    data.numeric_columns = index.numeric_columns();
    for (const QuestionRecord& rec : records) {
        if (!rec.label) throw InvalidLabel(rec.id, "dataset construction needs labels");
        std::optional<CoarseClass> hint;
        if (config.include_coarse_class) hint = rec.label->coarse;
        data.vectors.push_back(vectorize(rec, index, config, lexicons, hint));
        data.labels.push_back(codec.index_of(*rec.label));
    }
    return data;
}

// --- approaches ------------------------------------------------------------------

std::string_view to_string(ApproachKind k) {
    switch (k) {
        case ApproachKind::INDIVIDUAL: return "individual";
        case ApproachKind::BAGGING: return "bagging";
        case ApproachKind::BOOSTING: return "boosting";
        case ApproachKind::STACKING: return "stacking";
        case ApproachKind::VOTING: return "voting";
    }
    return "?";
}

std::string ApproachSpec::label() const {
    switch (kind) {
        case ApproachKind::INDIVIDUAL: return "individual(" + std::string(to_string(base)) + ")";
        case ApproachKind::BAGGING: return "bagging(" + std::string(to_string(base)) + ")";
        case ApproachKind::BOOSTING: return "boosting(" + std::string(to_string(base)) + ")";
        case ApproachKind::STACKING: return "stacking(meta=" + std::string(to_string(meta)) + ")";
        case ApproachKind::VOTING: return "voting";
    }
    return "?";
}

namespace {

const std::array<LearnerKind, 4> kAllKinds = {LearnerKind::NB, LearnerKind::KNB, LearnerKind::RI,
                                              LearnerKind::DT};

}  // namespace

std::vector<ApproachSpec> combined_approach_rows(const ApproachSpec& prototype) {
    std::vector<ApproachSpec> rows;
    for (LearnerKind k : kAllKinds) {
        ApproachSpec s = prototype;
        s.kind = ApproachKind::BAGGING;
        s.base = k;
        rows.push_back(s);
    }
    for (LearnerKind k : kAllKinds) {
        ApproachSpec s = prototype;
        s.kind = ApproachKind::BOOSTING;
        s.base = k;
        rows.push_back(s);
    }
    for (LearnerKind k : kAllKinds) {
        ApproachSpec s = prototype;
        s.kind = ApproachKind::STACKING;
        s.meta = k;
        rows.push_back(s);
    }
    ApproachSpec v = prototype;
    v.kind = ApproachKind::VOTING;
    rows.push_back(v);
    return rows;
}

std::vector<ApproachSpec> individual_approach_rows(const ApproachSpec& prototype) {
    std::vector<ApproachSpec> rows;
    for (LearnerKind k : kAllKinds) {
        ApproachSpec s = prototype;
        s.kind = ApproachKind::INDIVIDUAL;
        s.base = k;
        rows.push_back(s);
    }
    return rows;
}

AnyModel train_approach(const ApproachSpec& spec, const Dataset& data, std::uint64_t seed) {
    switch (spec.kind) {
        case ApproachKind::INDIVIDUAL:
            return train(spec.hyper.with_kind(spec.base).with_seed(derive_seed(seed, "individual")), data);
        case ApproachKind::BAGGING:
            return bagging_train(spec.hyper.with_kind(spec.base), data, spec.size,
                                 derive_seed(seed, "bagging"));
        case ApproachKind::BOOSTING:
            return adaboost_train(spec.hyper.with_kind(spec.base), data, spec.max_iters,
                                  derive_seed(seed, "boosting"));
        case ApproachKind::STACKING: {
            std::array<LearnerSpec, 3> bases;
            std::size_t b = 0;
            for (LearnerKind k : kAllKinds) {
                if (k == spec.meta) continue;
                bases[b] = spec.hyper.with_kind(k).with_seed(derive_seed(seed, "stack-base", b));
                ++b;
            }
            const LearnerSpec meta = spec.hyper.with_kind(spec.meta).with_seed(derive_seed(seed, "stack-meta"));
            return stacking_train(bases, meta, data, spec.stacking);
        }
        case ApproachKind::VOTING: {
            std::array<LearnerSpec, 4> specs;
            for (std::size_t i = 0; i < 4; ++i)
                specs[i] = spec.hyper.with_kind(kAllKinds[i]).with_seed(derive_seed(seed, "vote", i));
            return voting_train(data, specs);
        }
    }
    throw Error("unknown approach kind");
}

Prediction predict_any(const AnyModel& model, const SparseVector& vector) {
    return std::visit(
        [&](const auto& m) -> Prediction {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Model>) return predict(m, vector);
            else if constexpr (std::is_same_v<T, BaggedModel>) return bagging_predict(m, vector);
            else if constexpr (std::is_same_v<T, BoostModel>) return adaboost_predict(m, vector);
            else if constexpr (std::is_same_v<T, StackModel>) return stacking_predict(m, vector);
            else return voting_predict(m, vector);
        },
        model);
}

nlohmann::json any_model_to_json(const AnyModel& model) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Model>) {
                json j = model_to_json(m);
                j["type"] = "single";
                return j;
            } else if constexpr (std::is_same_v<T, BaggedModel>) return bagged_to_json(m);
            else if constexpr (std::is_same_v<T, BoostModel>) return boost_to_json(m);
            else if constexpr (std::is_same_v<T, StackModel>) return stack_to_json(m);
            else return voted_to_json(m);
        },
        model);
}

AnyModel any_model_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "single") return model_from_json(j);
    if (type == "bagged") return bagged_from_json(j);
    if (type == "boosted") return boost_from_json(j);
    if (type == "stacked") return stack_from_json(j);
    if (type == "voted") return voted_from_json(j);
    throw Error("unknown model type '" + type + "'");
}

// --- reports -----------------------------------------------------------------------

std::vector<std::optional<double>> EvaluationReport::per_class_accuracy() const {
    std::vector<std::optional<double>> out;
    for (std::size_t c = 0; c < confusion.size(); ++c) {
        std::size_t gold = 0;
        for (std::size_t p = 0; p < confusion[c].size(); ++p) gold += confusion[c][p];
        if (gold == 0) out.push_back(std::nullopt);
        else out.push_back(static_cast<double>(confusion[c][c]) / static_cast<double>(gold));
    }
    return out;
}

std::string EvaluationReport::to_text() const {
    std::ostringstream out;
    out << "approach: " << approach << "  features: " << feature_set << "  seed: " << seed << '\n';
    out << "accuracy: " << std::fixed << std::setprecision(2) << overall_accuracy * 100.0 << "% ("
        << total << " samples)\n";
    const auto per_class = per_class_accuracy();
    for (std::size_t c = 0; c < class_names.size(); ++c) {
        out << "  " << std::left << std::setw(20) << class_names[c];
        if (per_class[c]) out << std::fixed << std::setprecision(2) << *per_class[c] * 100.0 << "%";
        else out << "-";
        out << '\n';
    }
    return out.str();
}

json report_to_json(const EvaluationReport& report) {
    return json{{"approach", report.approach},
                {"feature_set", report.feature_set},
                {"seed", report.seed},
                {"class_names", report.class_names},
                {"confusion", report.confusion},
                {"total", report.total},
                {"overall_accuracy", report.overall_accuracy}};
}

EvaluationReport report_from_json(const json& j) {
    EvaluationReport report;
    report.approach = j.at("approach").get<std::string>();
    report.feature_set = j.at("feature_set").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.class_names = j.at("class_names").get<std::vector<std::string>>();
    report.confusion = j.at("confusion").get<std::vector<std::vector<std::size_t>>>();
    report.total = j.at("total").get<std::size_t>();
    report.overall_accuracy = j.at("overall_accuracy").get<double>();
    return report;
}

EvaluationReport evaluate(const AnyModel& model, const std::vector<QuestionRecord>& test,
                          const FeatureIndex& index, const FeatureConfig& config,
                          const Lexicons& lexicons, const LabelCodec& codec,
                          const std::string& approach_label, std::uint64_t seed) {
    EvaluationReport report;
    report.approach = approach_label;
    report.feature_set = config.set_name();
    report.seed = seed;
    report.class_names = codec.names();
    const int k = codec.num_classes();
    report.confusion.assign(k, std::vector<std::size_t>(k, 0));

    std::size_t correct = 0;
    for (const QuestionRecord& rec : test) {
        if (!rec.label) throw InvalidLabel(rec.id, "evaluation needs gold labels");
        std::optional<CoarseClass> hint;
        if (config.include_coarse_class) hint = rec.label->coarse;
        const SparseVector vec = vectorize(rec, index, config, lexicons, hint);
        const int gold = codec.index_of(*rec.label);
        const int pred = predict_any(model, vec).label;
        report.confusion[gold][pred] += 1;
        if (gold == pred) ++correct;
        ++report.total;
    }
    report.overall_accuracy =
        report.total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(report.total);
    return report;
}

// --- size sweeps ----------------------------------------------------------------------

std::optional<std::size_t> detect_stability_index(const std::vector<double>& accuracies, double tol,
                                                  int window) {
    if (window < 1 || accuracies.size() < static_cast<std::size_t>(window)) return std::nullopt;
    for (std::size_t i = 0; i + window <= accuracies.size(); ++i) {
        double lo = accuracies[i], hi = accuracies[i];
        for (std::size_t j = i; j < i + window; ++j) {
            lo = std::min(lo, accuracies[j]);
            hi = std::max(hi, accuracies[j]);
        }
        if (hi - lo <= tol) return i;
    }
    return std::nullopt;
}

std::string SweepCurve::to_csv() const {
    std::ostringstream out;
    out << "size,accuracy\n";
    for (const SweepPoint& p : points)
        out << p.size << ',' << std::setprecision(17) << p.accuracy << '\n';
    return out.str();
}

SweepCurve size_sweep(Combiner combiner, const LearnerSpec& base, const Dataset& train,
                      const Dataset& test, const std::vector<int>& sizes, double tol, int window,
                      std::uint64_t seed) {
    if (sizes.empty()) throw Error("sweep needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw Error("sweep sizes must be strictly ascending");
    if (sizes.front() < 1) throw Error("sweep sizes must be >= 1");

    SweepCurve curve;
    curve.combiner = combiner;
    const std::size_t n_test = test.size();

    if (combiner == Combiner::BAGGING) {
        const BaggedModel full = bagging_train(base, train, sizes.back(), seed);
        // Per-member votes once; prefix ensembles share members.
        std::vector<std::vector<int>> member_votes(full.members.size(), std::vector<int>(n_test));
        for (std::size_t t = 0; t < full.members.size(); ++t)
            for (std::size_t i = 0; i < n_test; ++i)
                member_votes[t][i] = predict(full.members[t], test.vectors[i]).label;

        const int k = full.members.front().num_classes;
        std::vector<std::vector<double>> counts(n_test, std::vector<double>(k, 0.0));
        std::size_t next_member = 0;
        for (int size : sizes) {
            for (; next_member < static_cast<std::size_t>(size); ++next_member)
                for (std::size_t i = 0; i < n_test; ++i)
                    counts[i][member_votes[next_member][i]] += 1.0;
            std::size_t correct = 0;
            for (std::size_t i = 0; i < n_test; ++i) {
                // Plurality with ties to the earliest member's choice among
                // tied labels, mirroring bagging_predict.
                double best = 0.0;
                for (double c : counts[i]) best = std::max(best, c);
                int label = -1;
                for (std::size_t t = 0; t < static_cast<std::size_t>(size) && label < 0; ++t)
                    if (counts[i][member_votes[t][i]] == best) label = member_votes[t][i];
                if (label == test.labels[i]) ++correct;
            }
            curve.points.push_back(SweepPoint{size, static_cast<double>(correct) / static_cast<double>(n_test)});
        }
    } else {
        const BoostModel full = adaboost_train(base, train, sizes.back(), seed);
        curve.halt = full.halt;
        // Usable prediction stages; the no-usable-round fallback is one.
        curve.halt_round = std::max<std::size_t>(full.rounds.size(), 1);
        const std::size_t usable = curve.halt_round;
        for (int size : sizes) {
            if (static_cast<std::size_t>(size) > usable) break;  // curve stops at the halt round
            std::size_t correct = 0;
            for (std::size_t i = 0; i < n_test; ++i) {
                const Prediction p = adaboost_predict_prefix(full, test.vectors[i], static_cast<std::size_t>(size));
                if (p.label == test.labels[i]) ++correct;
            }
            curve.points.push_back(SweepPoint{size, static_cast<double>(correct) / static_cast<double>(n_test)});
        }
    }

    std::vector<double> accuracies;
    for (const SweepPoint& p : curve.points) accuracies.push_back(p.accuracy);
    if (auto idx = detect_stability_index(accuracies, tol, window))
        curve.stability_size = curve.points[*idx].size;
    return curve;
}

// --- experiment grids --------------------------------------------------------------------

std::string GridResult::to_csv() const {
    std::ostringstream out;
    out << "approach,feature_set,seed,accuracy\n";
    for (std::size_t r = 0; r < row_labels.size(); ++r)
        for (std::size_t c = 0; c < col_labels.size(); ++c)
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                out << row_labels[r] << ',' << col_labels[c] << ',' << seeds[s] << ',';
                if (!cells[r][c].errors[s].empty()) out << "error";
                else out << std::setprecision(17) << cells[r][c].per_seed[s];
                out << '\n';
            }
    return out.str();
}

std::string GridResult::to_text() const {
    std::ostringstream out;
    std::size_t width = 20;
    for (const std::string& label : row_labels) width = std::max(width, label.size() + 2);
    out << std::left << std::setw(static_cast<int>(width)) << "approach";
    for (const std::string& col : col_labels) out << std::right << std::setw(12) << col;
    out << '\n';
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out << std::left << std::setw(static_cast<int>(width)) << row_labels[r];
        for (std::size_t c = 0; c < col_labels.size(); ++c) {
            const GridCell& cell = cells[r][c];
            if (cell.mean) {
                std::ostringstream v;
                v << std::fixed << std::setprecision(2) << *cell.mean * 100.0;
                out << std::right << std::setw(12) << v.str();
            } else {
                out << std::right << std::setw(12) << "error";
            }
        }
        out << '\n';
    }
    return out.str();
}

GridResult run_grid(const GridSpec& spec, const std::vector<QuestionRecord>& train,
                    const std::vector<QuestionRecord>& test, const Lexicons& lexicons,
                    const LabelCodec& codec) {
    if (spec.feature_sets.empty() || spec.rows.empty()) throw Error("grid needs feature sets and rows");
    if (spec.seeds.empty()) throw Error("grid needs at least one seed");

    GridResult result;
    for (const ApproachSpec& row : spec.rows) result.row_labels.push_back(row.label());
    for (const FeatureConfig& cfg : spec.feature_sets) result.col_labels.push_back(cfg.set_name());
    result.seeds = spec.seeds;
    result.cells.assign(spec.rows.size(),
                        std::vector<GridCell>(spec.feature_sets.size()));
    for (auto& row : result.cells)
        for (GridCell& cell : row) {
            cell.per_seed.assign(spec.seeds.size(), 0.0);
            cell.errors.assign(spec.seeds.size(), "");
        }

    // Per-column data is deterministic, so it is shared across rows.
    struct ColumnData {
        FeatureIndex index;
        Dataset train_data;
    };
    std::vector<ColumnData> columns;
    for (const FeatureConfig& cfg : spec.feature_sets) {
        ColumnData col;
        col.index = build_feature_index(train, cfg, lexicons);
        col.train_data = make_dataset(train, col.index, cfg, lexicons, codec);
        columns.push_back(std::move(col));
    }

    struct Task {
        std::size_t row, col, seed_index;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < spec.rows.size(); ++r)
        for (std::size_t c = 0; c < spec.feature_sets.size(); ++c)
            for (std::size_t s = 0; s < spec.seeds.size(); ++s) tasks.push_back(Task{r, c, s});

    auto run_task = [&](const Task& task) {
        GridCell& cell = result.cells[task.row][task.col];
        try {
            // Cell seeds key off the labels, so reordering rows or columns
            // only permutes the output.
            const std::uint64_t cell_seed = derive_seed(
                spec.seeds[task.seed_index], result.row_labels[task.row] + "|" + result.col_labels[task.col]);
            const AnyModel model = train_approach(spec.rows[task.row], columns[task.col].train_data, cell_seed);
            const EvaluationReport report =
                evaluate(model, test, columns[task.col].index, spec.feature_sets[task.col], lexicons, codec,
                         result.row_labels[task.row], spec.seeds[task.seed_index]);
            cell.per_seed[task.seed_index] = report.overall_accuracy;
        } catch (const std::exception& e) {
            cell.errors[task.seed_index] = e.what();
        }
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        for (const Task& task : tasks) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(tasks[i]);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    for (auto& row : result.cells)
        for (GridCell& cell : row) {
            double sum = 0.0;
            std::size_t ok = 0;
            bool failed = false;
            for (std::size_t s = 0; s < cell.per_seed.size(); ++s) {
                if (!cell.errors[s].empty()) failed = true;
                else {
                    sum += cell.per_seed[s];
                    ++ok;
                }
            }
            if (!failed && ok > 0) cell.mean = sum / static_cast<double>(ok);
        }
    return result;
}

// --- fine-grained protocol --------------------------------------------------------------

std::string_view to_string(FineMode m) {
    return m == FineMode::GOLD_PARTITION ? "gold" : "pipelined";
}

std::string FineReport::to_text() const {
    std::ostringstream out;
    out << "fine-grained (" << to_string(mode) << ")  approach: " << approach
        << "  features: " << feature_set << '\n';
    out << std::left << std::setw(10) << "class" << std::right << std::setw(8) << "train"
        << std::setw(8) << "test" << std::setw(12) << "accuracy" << '\n';
    for (const FineRow& row : rows) {
        out << std::left << std::setw(10) << ("F_" + std::string(to_string(row.coarse)));
        if (!row.populated) {
            out << std::right << std::setw(28) << (row.error.empty() ? "-" : row.error) << '\n';
            continue;
        }
        std::ostringstream acc;
        acc << std::fixed << std::setprecision(2) << row.accuracy * 100.0;
        out << std::right << std::setw(8) << row.n_train << std::setw(8) << row.n_test
            << std::setw(12) << acc.str() << '\n';
    }
    return out.str();
}

std::string FineReport::to_csv() const {
    std::ostringstream out;
    out << "mode,approach,feature_set,class,n_train,n_test,accuracy\n";
    for (const FineRow& row : rows) {
        if (!row.populated) continue;
        out << to_string(mode) << ',' << approach << ',' << feature_set << ",F_"
            << to_string(row.coarse) << ',' << row.n_train << ',' << row.n_test << ','
            << std::setprecision(17) << row.accuracy << '\n';
    }
    return out.str();
}

FineReport fine_grained_eval(const std::vector<QuestionRecord>& train,
                             const std::vector<QuestionRecord>& test, FineMode mode,
                             const ApproachSpec& approach, const FeatureConfig& config,
                             const Lexicons& lexicons, const Taxonomy& taxonomy,
                             std::uint64_t seed) {
    FineReport report;
    report.mode = mode;
    report.approach = approach.label();
    report.feature_set = config.set_name();

    struct Part {
        bool trained = false;
        FeatureIndex index;
        LabelCodec codec = LabelCodec::coarse();
        std::optional<AnyModel> model;
        std::vector<const QuestionRecord*> test_records;
        std::size_t n_train = 0;
    };
    std::array<Part, kNumCoarseClasses> parts;

    for (const QuestionRecord& rec : test) {
        if (!rec.label) throw InvalidLabel(rec.id, "fine evaluation needs labels");
        parts[static_cast<std::size_t>(rec.label->coarse)].test_records.push_back(&rec);
    }

    // One fine classifier per coarse class, trained on that class's gold
    // partition with the coarse-class feature set accordingly.
    for (std::size_t ci = 0; ci < kNumCoarseClasses; ++ci) {
        const CoarseClass coarse = coarse_classes()[ci];
        std::vector<QuestionRecord> part_train;
        for (const QuestionRecord& rec : train) {
            if (!rec.label) throw InvalidLabel(rec.id, "fine evaluation needs labels");
            if (rec.label->coarse == coarse) part_train.push_back(rec);
        }
        Part& part = parts[ci];
        part.n_train = part_train.size();
        if (part_train.empty()) continue;
        part.codec = LabelCodec::fine(taxonomy, coarse);
        part.index = build_feature_index(part_train, config, lexicons);
        const Dataset data = make_dataset(part_train, part.index, config, lexicons, part.codec);
        part.model = train_approach(approach, data, derive_seed(seed, "fine-part", ci));
        part.trained = true;
    }

    std::optional<AnyModel> coarse_model;
    FeatureIndex coarse_index;
    FeatureConfig coarse_config = config;
    coarse_config.include_coarse_class = false;  // the router predicts it
    if (mode == FineMode::PIPELINED) {
        coarse_index = build_feature_index(train, coarse_config, lexicons);
        const Dataset coarse_data = make_dataset(train, coarse_index, coarse_config, lexicons, LabelCodec::coarse());
        coarse_model = train_approach(approach, coarse_data, derive_seed(seed, "fine-coarse-router"));
    }

    for (std::size_t ci = 0; ci < kNumCoarseClasses; ++ci) {
        const CoarseClass coarse = coarse_classes()[ci];
        Part& part = parts[ci];
        FineRow row;
        row.coarse = coarse;
        row.n_train = part.n_train;
        row.n_test = part.test_records.size();
        if (!part.trained || part.test_records.empty()) {
            row.error = EmptyCoarsePartition(coarse).what();
            report.rows.push_back(std::move(row));
            continue;
        }

        std::size_t correct = 0;
        for (const QuestionRecord* rec : part.test_records) {
            if (mode == FineMode::GOLD_PARTITION) {
                std::optional<CoarseClass> hint;
                if (config.include_coarse_class) hint = coarse;
                const SparseVector vec = vectorize(*rec, part.index, config, lexicons, hint);
                const int pred = predict_any(*part.model, vec).label;
                if (pred == part.codec.index_of(*rec->label)) ++correct;
            } else {
                // Route through the predicted coarse class; judged against
                // the gold fine label, so routing errors count as errors.
                const SparseVector coarse_vec = vectorize(*rec, coarse_index, coarse_config, lexicons);
                const auto routed = static_cast<CoarseClass>(predict_any(*coarse_model, coarse_vec).label);
                const Part& routed_part = parts[static_cast<std::size_t>(routed)];
                if (routed != coarse || !routed_part.trained) continue;  // wrong class or no model
                std::optional<CoarseClass> hint;
                if (config.include_coarse_class) hint = routed;
                const SparseVector vec = vectorize(*rec, routed_part.index, config, lexicons, hint);
                const int pred = predict_any(*routed_part.model, vec).label;
                if (pred == routed_part.codec.index_of(*rec->label)) ++correct;
            }
        }
        row.populated = true;
        row.accuracy = static_cast<double>(correct) / static_cast<double>(row.n_test);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace benqc
