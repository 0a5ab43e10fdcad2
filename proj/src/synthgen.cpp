#include "benqc/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <nlohmann/json.hpp>

#include "benqc/builtin_data.hpp"
#include "benqc/features.hpp"
#include "benqc/rng.hpp"

namespace benqc {

const ReferenceCounts& reference_corpus_counts() {
    static const ReferenceCounts counts = {
        {172, 74, 76, 81, 71, 75, 73, 78, 69},  // train
        {90, 30, 30, 35, 30, 29, 26, 38, 23},   // test
    };
    return counts;
}

namespace {

const std::array<std::vector<std::string>, kNumCoarseClasses>& class_interrogatives() {
    static const std::array<std::vector<std::string>, kNumCoarseClasses> map = {{
        {"ke", "kArA", "kAkeV"},        // PER
        {"koVna", "koVnati"},           // ORG
        {"koWAyZa"},                    // LOC
        {"kaKana", "kawaxina"},         // TEM
        {"kawa", "kayZa", "kayZati"},   // NUM
        {"kiBAbeV", "keVmaneV"},        // METH
        {"keVna"},                      // REA
        {"ki", "kI"},                   // DEF
        {"kisera", "kiseV"},            // MISC
    }};
    return map;
}

// Class-linked gazetteer lists and named-entity tags; empty = no link.
const std::array<std::string, kNumCoarseClasses> kGazetteerLink = {
    "human-authority", "", "", "date", "date", "", "", "food", ""};
const std::array<std::string, kNumCoarseClasses> kNeLink = {
    "Person", "Organization", "Location", "", "", "", "", "", ""};

constexpr std::string_view kOnsets[] = {"k",  "g", "c", "j", "t", "x", "n", "p", "b", "m",
                                        "r",  "l", "s", "S", "h", "w", "B", "K", "G", "P",
                                        "gr", "pr", "sw", "bh"};
constexpr std::string_view kNuclei[] = {"a", "A", "i", "I", "u", "U", "eV", "oV", "O", "e", "o"};

std::string synth_word(Rng& rng, std::set<std::string>& used) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::string word;
        const std::size_t syllables = 2 + rng.uniform_index(3);
        for (std::size_t s = 0; s < syllables; ++s) {
            word += kOnsets[rng.uniform_index(std::size(kOnsets))];
            word += kNuclei[rng.uniform_index(std::size(kNuclei))];
        }
        if (rng.bernoulli(0.3)) word += "ra";
        if (used.insert(word).second) return word;
    }
    throw Error("synthetic vocabulary exhausted");
}

struct Vocab {
    std::array<std::vector<std::string>, kNumCoarseClasses> sig;
    std::array<std::vector<std::vector<std::string>>, kNumCoarseClasses> fine_sig;
    std::vector<std::string> shared;
};

Vocab build_vocab(const SynthSpec& spec, const Taxonomy& taxonomy, Rng rng) {
    std::set<std::string> used;
    const Lexicons& lex = Lexicons::builtin();
    for (const auto& [word, type] : lex.interrogatives()) used.insert(word);
    for (const auto& [list, words] : lex.gazetteers()) used.insert(words.begin(), words.end());

    Vocab vocab;
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
        for (int k = 0; k < spec.signature_words_per_class; ++k)
            vocab.sig[c].push_back(synth_word(rng, used));
        const auto& fines = taxonomy.fine_classes(coarse_classes()[c]);
        vocab.fine_sig[c].resize(fines.size());
        if (spec.fine_labels)
            for (std::size_t f = 0; f < fines.size(); ++f)
                for (int k = 0; k < spec.fine_signature_words; ++k)
                    vocab.fine_sig[c][f].push_back(synth_word(rng, used));
    }
    for (int k = 0; k < spec.confusable_vocab; ++k) vocab.shared.push_back(synth_word(rng, used));
    return vocab;
}

std::string pos_for(const std::string& word) {
    const std::uint64_t h = fnv1a64(word) % 100;
    if (h < 25) return "NNP";
    if (h < 75) return "NN";
    if (h < 90) return "JJ";
    return "VM";
}

std::vector<std::size_t> apportion(const std::array<double, kNumCoarseClasses>& dist, std::size_t n) {
    double total = 0.0;
    for (double d : dist) {
        if (d < 0.0) throw Error("class distribution entries must be non-negative");
        total += d;
    }
    if (total <= 0.0) throw Error("class distribution must have positive mass");

    std::vector<std::size_t> counts(kNumCoarseClasses, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
        const double quota = static_cast<double>(n) * dist[c] / total;
        counts[c] = static_cast<std::size_t>(quota);
        assigned += counts[c];
        remainders.emplace_back(quota - std::floor(quota), c);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[remainders[i % remainders.size()].second] += 1;
    return counts;
}

QuestionRecord make_record(const SynthSpec& spec, const Taxonomy& taxonomy, const Vocab& vocab,
                           std::size_t coarse_index, std::size_t record_number, Rng rng) {
    const Lexicons& lex = Lexicons::builtin();

    // Signal class: content words reflect it; the label may be flipped later.
    const std::size_t c = coarse_index;

    // Interrogative unit (two adjacent tokens model the dual interrogative).
    std::vector<std::string> wh_unit;
    const bool off_class = rng.bernoulli(spec.interrogative_confusion);
    if (!off_class && c == static_cast<std::size_t>(CoarseClass::MISC) && rng.bernoulli(0.5)) {
        wh_unit = {"ki", "ki"};
    } else {
        const auto& pool = off_class
            ? class_interrogatives()[rng.uniform_index(kNumCoarseClasses)]
            : class_interrogatives()[c];
        wh_unit = {pool[rng.uniform_index(pool.size())]};
    }

    // Fine class drawn uniformly within the signal class.
    const auto& fines = taxonomy.fine_classes(coarse_classes()[c]);
    const std::size_t fine_index = rng.uniform_index(fines.size());

    struct Word {
        std::string form;
        std::optional<std::string> ne;
    };
    std::vector<Word> content;
    // Every record carries its class anchor word plus extra signature draws.
    content.push_back({vocab.sig[c][0], std::nullopt});
    const std::size_t n_sig = 1 + rng.uniform_index(3);
    for (std::size_t k = 0; k < n_sig; ++k)
        content.push_back({vocab.sig[c][rng.uniform_index(vocab.sig[c].size())], std::nullopt});
    if (spec.fine_labels && !vocab.fine_sig[c][fine_index].empty()) {
        const auto& pool = vocab.fine_sig[c][fine_index];
        content.push_back({pool[rng.uniform_index(pool.size())], std::nullopt});
    }

    // Cross-talk: signature words of another class (the dominant error
    // source being modeled), plus neutral shared words.
    if (rng.bernoulli(spec.confusable_rate)) {
        std::size_t other = rng.uniform_index(kNumCoarseClasses - 1);
        if (other >= c) ++other;
        const std::size_t n_cross = 1 + rng.uniform_index(2);
        for (std::size_t k = 0; k < n_cross; ++k)
            content.push_back({vocab.sig[other][rng.uniform_index(vocab.sig[other].size())], std::nullopt});
    }
    const std::size_t n_shared = rng.uniform_index(3);
    for (std::size_t k = 0; k < n_shared; ++k)
        content.push_back({vocab.shared[rng.uniform_index(vocab.shared.size())], std::nullopt});

    if (!kGazetteerLink[c].empty() && rng.bernoulli(spec.gazetteer_rate)) {
        const auto& words = lex.gazetteers().at(kGazetteerLink[c]);
        content.push_back({words[rng.uniform_index(words.size())], std::nullopt});
    }
    if (!kNeLink[c].empty() && rng.bernoulli(spec.ne_rate)) content.front().ne = kNeLink[c];

    // Free word order: the interrogative unit lands anywhere.
    std::vector<std::size_t> order(content.size() + 1);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    QuestionRecord rec;
    const bool danda = c == static_cast<std::size_t>(CoarseClass::DEF) && rng.bernoulli(0.6);
    rec.end_marker = danda ? EndMarker::DANDA : EndMarker::QUESTION_MARK;

    for (std::size_t slot : order) {
        if (slot == content.size()) {
            for (const std::string& wh : wh_unit)
                rec.tokens.push_back(Token{wh, "WQ", std::nullopt, std::nullopt});
        } else {
            const std::string pos = content[slot].ne ? "NNP" : pos_for(content[slot].form);
            std::optional<std::string> chunk;
            if (pos == "NN" || pos == "NNP") chunk = "B-NP";
            rec.tokens.push_back(Token{content[slot].form, pos, chunk, content[slot].ne});
        }
    }
    rec.tokens.push_back(Token{std::string(1, end_marker_char(rec.end_marker)), "SYM", std::nullopt, std::nullopt});

    for (const Token& tok : rec.tokens) {
        if (!rec.text.empty()) rec.text += ' ';
        rec.text += tok.form;
    }

    // Label noise flips the coarse label (and resamples a consistent fine
    // label) without touching the content words.
    std::size_t label_class = c;
    if (spec.label_noise > 0.0 && rng.bernoulli(spec.label_noise)) {
        std::size_t other = rng.uniform_index(kNumCoarseClasses - 1);
        if (other >= c) ++other;
        label_class = other;
    }
    const auto& label_fines = taxonomy.fine_classes(coarse_classes()[label_class]);
    std::optional<std::string> fine;
    if (spec.fine_labels) {
        const std::size_t fi = label_class == c ? fine_index : rng.uniform_index(label_fines.size());
        fine = label_fines[fi].name;
    }
    rec.label = Label{coarse_classes()[label_class], fine};

    char id[32];
    std::snprintf(id, sizeof id, "synth-%06zu", record_number);
    rec.id = id;
    return rec;
}

std::vector<QuestionRecord> generate(const SynthSpec& spec, const Taxonomy& taxonomy,
                                     const std::vector<std::pair<std::size_t, std::optional<Split>>>& slots) {
    const Rng root(spec.seed);
    const Vocab vocab = build_vocab(spec, taxonomy, root.split("vocab"));

    std::vector<QuestionRecord> records;
    records.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        QuestionRecord rec = make_record(spec, taxonomy, vocab, slots[i].first, i + 1, root.split("record", i));
        rec.split = slots[i].second;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

std::vector<QuestionRecord> generate_corpus(const SynthSpec& spec) {
    if (spec.label_noise < 0.0 || spec.label_noise >= 0.5)
        throw Error("label_noise must lie in [0, 0.5)");
    const Taxonomy& taxonomy = Taxonomy::builtin();

    const std::vector<std::size_t> counts = apportion(spec.class_distribution, spec.n);
    std::vector<std::pair<std::size_t, std::optional<Split>>> slots;
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c)
        for (std::size_t k = 0; k < counts[c]; ++k) slots.emplace_back(c, std::nullopt);
    Rng order = Rng(spec.seed).split("order");
    order.shuffle(slots);

    return generate(spec, taxonomy, slots);
}

std::vector<QuestionRecord> generate_reference_split_corpus(const SynthSpec& spec) {
    if (spec.label_noise < 0.0 || spec.label_noise >= 0.5)
        throw Error("label_noise must lie in [0, 0.5)");
    const Taxonomy& taxonomy = Taxonomy::builtin();
    const ReferenceCounts& ref = reference_corpus_counts();

    std::vector<std::pair<std::size_t, std::optional<Split>>> slots;
    for (std::size_t c = 0; c < kNumCoarseClasses; ++c) {
        for (std::size_t k = 0; k < ref.train[c]; ++k) slots.emplace_back(c, Split::TRAIN);
        for (std::size_t k = 0; k < ref.test[c]; ++k) slots.emplace_back(c, Split::TEST);
    }
    Rng order = Rng(spec.seed).split("order");
    order.shuffle(slots);

    return generate(spec, taxonomy, slots);
}

const MiniSample& bundled_sample() {
    static const MiniSample sample = [] {
        MiniSample s;
        s.records = parse_corpus(builtin_sample_jsonl(), Taxonomy::builtin());
        const auto manifest = nlohmann::json::parse(builtin_sample_manifest_json());
        s.total = manifest.at("total").get<std::size_t>();
        for (std::size_t c = 0; c < kNumCoarseClasses; ++c)
            s.per_class[c] =
                manifest.at("per_class").at(std::string(to_string(coarse_classes()[c]))).get<std::size_t>();
        return s;
    }();
    return sample;
}

}  // namespace benqc
