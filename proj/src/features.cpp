#include "benqc/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "benqc/builtin_data.hpp"
#include "benqc/rng.hpp"

namespace benqc {

namespace {

std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Content tokens are everything before the trailing end-marker token. The
// end marker contributes only QLEN and END_MARKER.
std::size_t content_end(const QuestionRecord& record) {
    return record.tokens.empty() ? 0 : record.tokens.size() - 1;
}

bool is_np_tag(const std::optional<std::string>& chunk) {
    return chunk && (*chunk == "B-NP" || *chunk == "I-NP");
}

}  // namespace

std::string_view to_string(FeatureNs ns) {
    switch (ns) {
        case FeatureNs::WORD: return "WORD";
        case FeatureNs::WH_WORD: return "WH_WORD";
        case FeatureNs::WH_POS: return "WH_POS";
        case FeatureNs::WH_TYPE: return "WH_TYPE";
        case FeatureNs::QLEN: return "QLEN";
        case FeatureNs::END_MARKER: return "END_MARKER";
        case FeatureNs::WORD_SHAPE: return "WORD_SHAPE";
        case FeatureNs::POS_TAG: return "POS_TAG";
        case FeatureNs::TAGGED_UNIGRAM: return "TAGGED_UNIGRAM";
        case FeatureNs::HEAD_WORD: return "HEAD_WORD";
        case FeatureNs::RELATED: return "RELATED";
        case FeatureNs::NE: return "NE";
        case FeatureNs::COARSE_CLASS: return "COARSE_CLASS";
    }
    return "?";
}

std::string FeatureId::str() const {
    std::string out(to_string(ns));
    if (!key.empty()) {
        out += ':';
        out += key;
    }
    return out;
}

std::string_view to_string(WordShape s) {
    switch (s) {
        case WordShape::ALL_DIGITS: return "ALL_DIGITS";
        case WordShape::MIXED: return "MIXED";
        case WordShape::OTHER: return "OTHER";
    }
    return "?";
}

std::string_view to_string(WhPosition p) {
    switch (p) {
        case WhPosition::FIRST: return "FIRST";
        case WhPosition::MIDDLE: return "MIDDLE";
        case WhPosition::LAST: return "LAST";
    }
    return "?";
}

std::string_view to_string(WhType t) {
    switch (t) {
        case WhType::SI: return "SI";
        case WhType::DI: return "DI";
        case WhType::CI: return "CI";
    }
    return "?";
}

// --- Lexicons ----------------------------------------------------------------

Lexicons Lexicons::parse(std::string_view interrogatives_tsv, std::string_view gazetteers_tsv) {
    Lexicons lex;

    auto each_line = [](std::string_view text, auto&& fn) {
        std::size_t pos = 0, lineno = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++lineno;
            std::string s = trim_copy(line);
            if (s.empty() || s[0] == '#') continue;
            fn(lineno, s);
        }
    };

    each_line(interrogatives_tsv, [&](std::size_t lineno, const std::string& s) {
        std::size_t tab = s.find('\t');
        if (tab == std::string::npos) throw ParseError(lineno, "expected word<TAB>SI|DI|CI");
        std::string word = trim_copy(s.substr(0, tab));
        std::string tag = trim_copy(s.substr(tab + 1));
        WhType type;
        if (tag == "SI") type = WhType::SI;
        else if (tag == "DI") type = WhType::DI;
        else if (tag == "CI") type = WhType::CI;
        else throw ParseError(lineno, "unknown interrogative type '" + tag + "'");
        if (word.empty()) throw ParseError(lineno, "empty interrogative");
        lex.interrogatives_[word] = type;
    });

    each_line(gazetteers_tsv, [&](std::size_t lineno, const std::string& s) {
        std::size_t tab = s.find('\t');
        if (tab == std::string::npos) throw ParseError(lineno, "expected listname<TAB>word");
        std::string list = trim_copy(s.substr(0, tab));
        std::string word = trim_copy(s.substr(tab + 1));
        if (list.empty() || word.empty()) throw ParseError(lineno, "empty gazetteer entry");
        auto& words = lex.gazetteers_[list];
        auto it = std::lower_bound(words.begin(), words.end(), word);
        if (it == words.end() || *it != word) words.insert(it, word);
    });

    return lex;
}

Lexicons Lexicons::load(const std::string& interrogatives_path, const std::string& gazetteers_path) {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open lexicon file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    return parse(slurp(interrogatives_path), slurp(gazetteers_path));
}

const Lexicons& Lexicons::builtin() {
    static const Lexicons lex = parse(builtin_interrogatives_text(), builtin_gazetteers_text());
    return lex;
}

std::optional<WhType> Lexicons::interrogative_type(const std::string& form) const {
    auto it = interrogatives_.find(form);
    if (it == interrogatives_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Lexicons::related_lists(const std::string& form) const {
    std::vector<std::string> lists;
    for (const auto& [name, words] : gazetteers_)
        if (std::binary_search(words.begin(), words.end(), form)) lists.push_back(name);
    return lists;
}

// --- FeatureConfig -----------------------------------------------------------

FeatureConfig FeatureConfig::from_set_name(std::string_view name) {
    FeatureConfig cfg;
    std::string s = trim_copy(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "fl") {
        cfg.lexical = true;
    } else if (s == "fl+fs") {
        cfg.lexical = cfg.syntactic = true;
    } else if (s == "fl+fs+fm") {
        cfg.lexical = cfg.syntactic = cfg.semantic = true;
    } else {
        throw Error("unknown feature set '" + std::string(name) + "' (expected fl, fl+fs or fl+fs+fm)");
    }
    return cfg;
}

std::string FeatureConfig::set_name() const {
    std::string s;
    if (lexical) s += "fl";
    if (syntactic) s += s.empty() ? "fs" : "+fs";
    if (semantic) s += s.empty() ? "fm" : "+fm";
    return s;
}

// --- FeatureIndex / SparseVector ----------------------------------------------

FeatureIndex FeatureIndex::from_features(std::vector<FeatureId> features) {
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());
    FeatureIndex idx;
    idx.features_ = std::move(features);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t i = 0; i < idx.features_.size(); ++i) {
        idx.to_column_[idx.features_[i]] = i;
        h = splitmix64(h ^ fnv1a64(idx.features_[i].str()));
    }
    idx.hash_ = h;
    return idx;
}

std::optional<std::uint32_t> FeatureIndex::column(const FeatureId& id) const {
    auto it = to_column_.find(id);
    if (it == to_column_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::uint32_t> FeatureIndex::numeric_columns() const {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t i = 0; i < features_.size(); ++i)
        if (features_[i].ns == FeatureNs::QLEN) cols.push_back(i);
    return cols;
}

double SparseVector::get(std::uint32_t column) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), column,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    return it != entries.end() && it->first == column ? it->second : 0.0;
}

// --- helpers -----------------------------------------------------------------

WordShape word_shape(std::string_view form) {
    bool digit = false, nondigit = false;
    for (unsigned char c : form) (std::isdigit(c) ? digit : nondigit) = true;
    if (digit && !nondigit) return WordShape::ALL_DIGITS;
    if (digit && nondigit) return WordShape::MIXED;
    return WordShape::OTHER;
}

bool is_interrogative(const Token& token, const Lexicons& lexicons) {
    return token.pos == "WQ" || lexicons.interrogative_type(token.form).has_value();
}

std::vector<WhOccurrence> wh_positions(const QuestionRecord& record, const Lexicons& lexicons) {
    std::vector<WhOccurrence> out;
    const std::size_t n_content = content_end(record);
    for (std::size_t i = 0; i < n_content; ++i) {
        if (!is_interrogative(record.tokens[i], lexicons)) continue;
        WhPosition pos = WhPosition::MIDDLE;
        if (i == 0) pos = WhPosition::FIRST;
        else if (i + 1 == n_content) pos = WhPosition::LAST;
        out.push_back(WhOccurrence{i, record.tokens[i].form, pos});
    }
    return out;
}

WhType wh_type(const QuestionRecord& record, const Lexicons& lexicons) {
    const auto occurrences = wh_positions(record, lexicons);
    if (occurrences.empty()) throw NoInterrogative(record.id);
    for (std::size_t k = 1; k < occurrences.size(); ++k)
        if (occurrences[k].token_index == occurrences[k - 1].token_index + 1) return WhType::DI;
    for (const auto& occ : occurrences)
        if (lexicons.interrogative_type(occ.form) == WhType::CI) return WhType::CI;
    return WhType::SI;
}

namespace {

struct ChunkSpan {
    std::size_t begin;
    std::size_t end;  // exclusive
};

// Maximal NP chunk spans over content tokens; a B-NP tag starts a new span.
std::vector<ChunkSpan> np_chunks(const QuestionRecord& record) {
    std::vector<ChunkSpan> spans;
    const std::size_t n = content_end(record);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& chunk = record.tokens[i].chunk;
        if (!is_np_tag(chunk)) continue;
        const bool continues = !spans.empty() && spans.back().end == i && *chunk == "I-NP";
        if (continues) spans.back().end = i + 1;
        else spans.push_back(ChunkSpan{i, i + 1});
    }
    return spans;
}

TokenSpan make_span(const QuestionRecord& record, const ChunkSpan& span) {
    std::string text;
    for (std::size_t i = span.begin; i < span.end; ++i) {
        if (!text.empty()) text += ' ';
        text += record.tokens[i].form;
    }
    return TokenSpan{span.begin, span.end, std::move(text)};
}

}  // namespace

std::optional<TokenSpan> find_head_word(const QuestionRecord& record) {
    // Anchored at the first interrogative token (WQ tag, with the builtin
    // lexicon as fallback for untagged corpora).
    std::optional<std::size_t> wh_index;
    const std::size_t n = content_end(record);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_interrogative(record.tokens[i], Lexicons::builtin())) {
            wh_index = i;
            break;
        }
    }
    if (!wh_index) return std::nullopt;

    const auto chunks = np_chunks(record);
    if (*wh_index == 0) {
        // Position I: first NP chunk after the interrogative.
        for (const auto& chunk : chunks)
            if (chunk.begin > *wh_index) return make_span(record, chunk);
    } else {
        // Positions II and III: immediate NP chunk before the interrogative.
        for (auto it = chunks.rbegin(); it != chunks.rend(); ++it)
            if (it->end <= *wh_index) return make_span(record, *it);
    }
    return std::nullopt;
}

// --- group extractors ----------------------------------------------------------

FeatureCounts extract_lexical(const QuestionRecord& record, const Lexicons& lexicons, bool word_unigrams) {
    FeatureCounts out;
    const std::size_t n_content = content_end(record);

    const auto occurrences = wh_positions(record, lexicons);
    for (const auto& occ : occurrences) {
        out[FeatureId{FeatureNs::WH_WORD, occ.form}] += 1.0;
        out[FeatureId{FeatureNs::WH_POS, std::string(to_string(occ.position))}] += 1.0;
    }
    if (!occurrences.empty())
        out[FeatureId{FeatureNs::WH_TYPE, std::string(to_string(wh_type(record, lexicons)))}] = 1.0;

    out[FeatureId{FeatureNs::QLEN, ""}] = static_cast<double>(record.tokens.size());
    out[FeatureId{FeatureNs::END_MARKER, std::string(1, end_marker_char(record.end_marker))}] = 1.0;

    for (std::size_t i = 0; i < n_content; ++i) {
        out[FeatureId{FeatureNs::WORD_SHAPE, std::string(to_string(word_shape(record.tokens[i].form)))}] += 1.0;
        if (word_unigrams) out[FeatureId{FeatureNs::WORD, record.tokens[i].form}] += 1.0;
    }
    return out;
}

FeatureCounts extract_syntactic(const QuestionRecord& record) {
    FeatureCounts out;
    const std::size_t n_content = content_end(record);
    for (std::size_t i = 0; i < n_content; ++i) {
        const Token& tok = record.tokens[i];
        out[FeatureId{FeatureNs::POS_TAG, tok.pos}] += 1.0;
        out[FeatureId{FeatureNs::TAGGED_UNIGRAM, tok.form + "/" + tok.pos}] += 1.0;
    }
    if (auto head = find_head_word(record))
        out[FeatureId{FeatureNs::HEAD_WORD, head->text}] = 1.0;
    return out;
}

FeatureCounts extract_semantic(const QuestionRecord& record, const Lexicons& lexicons) {
    FeatureCounts out;
    const std::size_t n_content = content_end(record);
    for (std::size_t i = 0; i < n_content; ++i) {
        const Token& tok = record.tokens[i];
        for (const std::string& list : lexicons.related_lists(tok.form))
            out[FeatureId{FeatureNs::RELATED, list}] += 1.0;
        if (tok.ne) out[FeatureId{FeatureNs::NE, *tok.ne}] += 1.0;
    }
    return out;
}

FeatureCounts extract_features(const QuestionRecord& record, const FeatureConfig& config,
                               const Lexicons& lexicons) {
    FeatureCounts out;
    auto merge = [&](FeatureCounts&& counts) {
        for (auto& [id, value] : counts) out[id] += value;
    };
    if (config.lexical) merge(extract_lexical(record, lexicons, config.word_unigrams));
    if (config.syntactic) merge(extract_syntactic(record));
    if (config.semantic) merge(extract_semantic(record, lexicons));
    return out;
}

FeatureIndex build_feature_index(const std::vector<QuestionRecord>& train_records,
                                 const FeatureConfig& config, const Lexicons& lexicons) {
    std::vector<FeatureId> features;
    for (const QuestionRecord& rec : train_records)
        for (const auto& [id, value] : extract_features(rec, config, lexicons)) features.push_back(id);
    if (config.include_coarse_class)
        for (CoarseClass c : coarse_classes())
            features.push_back(FeatureId{FeatureNs::COARSE_CLASS, std::string(to_string(c))});
    if (features.empty()) throw EmptyFeatureSpace();
    return FeatureIndex::from_features(std::move(features));
}

SparseVector vectorize(const QuestionRecord& record, const FeatureIndex& index,
                       const FeatureConfig& config, const Lexicons& lexicons,
                       std::optional<CoarseClass> coarse_hint) {
    FeatureCounts counts = extract_features(record, config, lexicons);
    if (config.include_coarse_class) {
        if (!coarse_hint) throw MissingCoarseHint();
        counts[FeatureId{FeatureNs::COARSE_CLASS, std::string(to_string(*coarse_hint))}] = 1.0;
    }
    SparseVector vec;
    vec.dim = static_cast<std::uint32_t>(index.size());
    for (const auto& [id, value] : counts) {
        if (value == 0.0) continue;
        if (auto col = index.column(id)) vec.entries.emplace_back(*col, value);
    }
    std::sort(vec.entries.begin(), vec.entries.end());
    return vec;
}

}  // namespace benqc
