#include "benqc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "benqc/rng.hpp"

namespace benqc {

using nlohmann::json;

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw Error(std::string("field '") + key + "' must be a string or null");
    return it->get<std::string>();
}

std::string required_string(const json& obj, const char* key) {
    auto v = optional_string(obj, key);
    if (!v || v->empty()) throw Error(std::string("missing or empty field '") + key + "'");
    return *v;
}

QuestionRecord record_from_json(const json& obj, const Taxonomy& taxonomy, const LoadOptions& opts) {
    QuestionRecord rec;
    rec.id = required_string(obj, "id");
    rec.text = required_string(obj, "text");

    const std::string marker = required_string(obj, "end_marker");
    if (marker == "?") rec.end_marker = EndMarker::QUESTION_MARK;
    else if (marker == "|") rec.end_marker = EndMarker::DANDA;
    else throw Error("end_marker must be \"?\" or \"|\"");

    auto tokens_it = obj.find("tokens");
    if (tokens_it == obj.end() || !tokens_it->is_array() || tokens_it->empty())
        throw Error("tokens must be a non-empty array");
    for (const json& tok : *tokens_it) {
        Token t;
        t.form = required_string(tok, "form");
        t.pos = required_string(tok, "pos");
        t.chunk = optional_string(tok, "chunk");
        if (t.chunk && (*t.chunk == "O" || t.chunk->empty())) t.chunk.reset();
        t.ne = optional_string(tok, "ne");
        if (t.ne && t.ne->empty()) t.ne.reset();
        rec.tokens.push_back(std::move(t));
    }
    if (rec.tokens.back().form != std::string(1, end_marker_char(rec.end_marker)))
        throw Error("last token must equal the end marker character");

    auto coarse = optional_string(obj, "coarse");
    auto fine = optional_string(obj, "fine");
    if (coarse) {
        try {
            rec.label = taxonomy.validate_label(*coarse, fine ? std::optional<std::string_view>(*fine) : std::nullopt);
        } catch (const Error& e) {
            throw InvalidLabel(rec.id, e.what());
        }
    } else if (fine) {
        throw InvalidLabel(rec.id, "fine class given without a coarse class");
    } else if (opts.require_labels) {
        throw InvalidLabel(rec.id, "record has no label");
    }

    if (auto split = optional_string(obj, "split")) {
        if (*split == "train") rec.split = Split::TRAIN;
        else if (*split == "test") rec.split = Split::TEST;
        else throw Error("split must be \"train\", \"test\" or null");
    }
    return rec;
}

template <typename OnError>
std::vector<QuestionRecord> parse_lines(std::istream& in, const Taxonomy& taxonomy,
                                        const LoadOptions& opts, OnError&& on_error) {
    std::vector<QuestionRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            on_error(lineno, std::string(), ParseError(lineno, "invalid JSON"));
            continue;
        }
        std::optional<QuestionRecord> rec;
        try {
            rec = record_from_json(obj, taxonomy, opts);
        } catch (const InvalidLabel& e) {
            on_error(lineno, e.id, e);
            continue;
        } catch (const Error& e) {
            on_error(lineno, optional_string(obj, "id").value_or(""), ParseError(lineno, e.what()));
            continue;
        }
        if (!seen.insert(rec->id).second) {
            on_error(lineno, rec->id, DuplicateId(rec->id));
            continue;
        }
        records.push_back(std::move(*rec));
    }
    return records;
}

}  // namespace

std::vector<QuestionRecord> load_corpus(std::istream& in, const Taxonomy& taxonomy, const LoadOptions& opts) {
    // The generic lambda keeps the concrete exception type when rethrowing.
    return parse_lines(in, taxonomy, opts,
                       [](std::size_t, const std::string&, const auto& e) -> void { throw e; });
}

std::vector<QuestionRecord> load_corpus(const std::string& path, const Taxonomy& taxonomy, const LoadOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus file: " + path);
    return load_corpus(in, taxonomy, opts);
}

std::vector<QuestionRecord> parse_corpus(std::string_view jsonl, const Taxonomy& taxonomy, const LoadOptions& opts) {
    std::istringstream in{std::string(jsonl)};
    return load_corpus(in, taxonomy, opts);
}

std::vector<QuestionRecord> load_corpus_diagnostics(std::istream& in, const Taxonomy& taxonomy,
                                                    std::vector<Diagnostic>& out_diags, const LoadOptions& opts) {
    return parse_lines(in, taxonomy, opts,
                       [&](std::size_t line, const std::string& id, const Error& e) {
                           out_diags.push_back(Diagnostic{line, id, e.what()});
                       });
}

std::string record_to_json_line(const QuestionRecord& rec) {
    json obj;
    obj["id"] = rec.id;
    obj["text"] = rec.text;
    json toks = json::array();
    for (const Token& t : rec.tokens) {
        json jt;
        jt["form"] = t.form;
        jt["pos"] = t.pos;
        jt["chunk"] = t.chunk ? json(*t.chunk) : json("O");
        if (t.ne) jt["ne"] = *t.ne;
        toks.push_back(std::move(jt));
    }
    obj["tokens"] = std::move(toks);
    obj["end_marker"] = std::string(1, end_marker_char(rec.end_marker));
    if (rec.label) {
        obj["coarse"] = std::string(to_string(rec.label->coarse));
        if (rec.label->fine) obj["fine"] = *rec.label->fine;
    }
    if (rec.split) obj["split"] = *rec.split == Split::TRAIN ? "train" : "test";
    return obj.dump();
}

void write_corpus(std::ostream& out, const std::vector<QuestionRecord>& records) {
    for (const QuestionRecord& rec : records) out << record_to_json_line(rec) << '\n';
}

namespace {

std::vector<std::size_t> sorted_by_id(const std::vector<QuestionRecord>& records,
                                      const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> order = subset;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].id < records[b].id;
    });
    return order;
}

}  // namespace

SplitResult split_corpus(const std::vector<QuestionRecord>& records, const RatioPolicy& policy) {
    if (!(policy.train_fraction > 0.0 && policy.train_fraction < 1.0))
        throw Error("train_fraction must lie strictly between 0 and 1");

    SplitResult result;
    auto take = [&](const std::vector<std::size_t>& subset, Rng rng) {
        std::vector<std::size_t> order = sorted_by_id(records, subset);
        rng.shuffle(order);
        const std::size_t n_train = static_cast<std::size_t>(policy.train_fraction * static_cast<double>(order.size()));
        for (std::size_t i = 0; i < order.size(); ++i) {
            (i < n_train ? result.train : result.test).push_back(records[order[i]]);
        }
    };

    Rng root(policy.seed);
    if (policy.stratified) {
        for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < records.size(); ++i) {
                if (!records[i].label) throw InvalidLabel(records[i].id, "stratified split needs labels");
                if (static_cast<std::size_t>(records[i].label->coarse) == c) subset.push_back(i);
            }
            take(subset, root.split("split-class", c));
        }
    } else {
        std::vector<std::size_t> all(records.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        take(all, root.split("split-global"));
    }
    return result;
}

SplitResult split_corpus_explicit(const std::vector<QuestionRecord>& records) {
    SplitResult result;
    for (const QuestionRecord& rec : records) {
        if (!rec.split) throw MissingSplitTag(rec.id);
        (*rec.split == Split::TRAIN ? result.train : result.test).push_back(rec);
    }
    return result;
}

ClassDistribution corpus_stats(const std::vector<QuestionRecord>& train,
                               const std::vector<QuestionRecord>& test) {
    ClassDistribution dist{};
    auto count = [&](const std::vector<QuestionRecord>& records, bool is_train) {
        for (const QuestionRecord& rec : records) {
            if (!rec.label) throw InvalidLabel(rec.id, "statistics need labeled records");
            auto& row = dist.per_class[static_cast<std::size_t>(rec.label->coarse)];
            (is_train ? row.train : row.test) += 1;
        }
    };
    count(train, true);
    count(test, false);
    for (auto& row : dist.per_class) {
        row.overall = row.train + row.test;
        dist.total.train += row.train;
        dist.total.test += row.test;
        dist.total.overall += row.overall;
    }
    return dist;
}

std::string ClassDistribution::to_text() const {
    std::ostringstream out;
    out << "Class          Train  Test  Overall\n";
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
        const Row& row = per_class[c];
        out << std::left << std::setw(15) << coarse_long_name(coarse_classes()[c])
            << std::right << std::setw(5) << row.train << std::setw(6) << row.test
            << std::setw(9) << row.overall << '\n';
    }
    out << std::left << std::setw(15) << "Total" << std::right << std::setw(5) << total.train
        << std::setw(6) << total.test << std::setw(9) << total.overall << '\n';
    return out.str();
}

double cohen_kappa(const std::vector<AnnotationPair>& pairs) {
    if (pairs.empty()) throw Error("kappa needs at least one annotation pair");

    std::map<std::string, std::pair<std::size_t, std::size_t>> marginals;
    std::size_t agree = 0;
    for (const AnnotationPair& p : pairs) {
        marginals[p.label_a].first += 1;
        marginals[p.label_b].second += 1;
        if (p.label_a == p.label_b) ++agree;
    }
    const std::size_t n = pairs.size();
    if (agree == n) return 1.0;

    // Exact integer accounting so the p_e == 1 degeneracy is detected
    // without floating-point tolerance games.
    std::size_t chance_num = 0;  // sum over classes of countA(c) * countB(c)
    for (const auto& [label, counts] : marginals) chance_num += counts.first * counts.second;
    if (chance_num == n * n) throw DegenerateMarginals();

    const double p_o = static_cast<double>(agree) / static_cast<double>(n);
    const double p_e = static_cast<double>(chance_num) / (static_cast<double>(n) * static_cast<double>(n));
    return (p_o - p_e) / (1.0 - p_e);
}

std::vector<AnnotationPair> load_annotation_pairs(std::istream& in) {
    std::vector<AnnotationPair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw ParseError(lineno, "expected id<TAB>labelA<TAB>labelB");
        pairs.push_back(AnnotationPair{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)});
    }
    return pairs;
}

std::vector<AnnotationPair> load_annotation_pairs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open annotation file: " + path);
    return load_annotation_pairs(in);
}

}  // namespace benqc
