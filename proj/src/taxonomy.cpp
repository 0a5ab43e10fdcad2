#include "benqc/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "benqc/builtin_data.hpp"

namespace benqc {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

}  // namespace

const std::array<CoarseClass, kNumCoarseClasses>& coarse_classes() {
    static const std::array<CoarseClass, kNumCoarseClasses> all = {
        CoarseClass::PER, CoarseClass::ORG,  CoarseClass::LOC,
        CoarseClass::TEM, CoarseClass::NUM,  CoarseClass::METH,
        CoarseClass::REA, CoarseClass::DEF,  CoarseClass::MISC,
    };
    return all;
}

std::string_view to_string(CoarseClass c) {
    switch (c) {
        case CoarseClass::PER: return "PER";
        case CoarseClass::ORG: return "ORG";
        case CoarseClass::LOC: return "LOC";
        case CoarseClass::TEM: return "TEM";
        case CoarseClass::NUM: return "NUM";
        case CoarseClass::METH: return "METH";
        case CoarseClass::REA: return "REA";
        case CoarseClass::DEF: return "DEF";
        case CoarseClass::MISC: return "MISC";
    }
    return "?";
}

std::string_view coarse_long_name(CoarseClass c) {
    switch (c) {
        case CoarseClass::PER: return "Person";
        case CoarseClass::ORG: return "Organization";
        case CoarseClass::LOC: return "Location";
        case CoarseClass::TEM: return "Temporal";
        case CoarseClass::NUM: return "Numerical";
        case CoarseClass::METH: return "Methodical";
        case CoarseClass::REA: return "Reason";
        case CoarseClass::DEF: return "Definition";
        case CoarseClass::MISC: return "Miscellaneous";
    }
    return "?";
}

std::optional<CoarseClass> coarse_from_string(std::string_view s) {
    const std::string u = upper(trim(s));
    for (CoarseClass c : coarse_classes())
        if (u == to_string(c)) return c;
    return std::nullopt;
}

std::string Label::str() const {
    std::string out(to_string(coarse));
    if (fine) {
        out += ':';
        out += *fine;
    }
    return out;
}

Taxonomy Taxonomy::parse(std::string_view text) {
    Taxonomy t;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;

        std::size_t tab = stripped.find('\t');
        if (tab == std::string::npos)
            throw TaxonomyParseError(lineno, "expected COARSE<TAB>FINE1,FINE2,...");
        auto coarse = coarse_from_string(stripped.substr(0, tab));
        if (!coarse) throw TaxonomyParseError(lineno, "unknown coarse class '" + stripped.substr(0, tab) + "'");

        std::stringstream fines(stripped.substr(tab + 1));
        std::string item;
        while (std::getline(fines, item, ',')) {
            std::string name = upper(trim(item));
            if (name.empty()) throw TaxonomyParseError(lineno, "empty fine class name");
            auto& list = t.fine_[static_cast<std::size_t>(*coarse)];
            bool dup = std::any_of(list.begin(), list.end(),
                                   [&](const FineClass& f) { return f.name == name; });
            if (dup) throw TaxonomyParseError(lineno, "duplicate fine class '" + name + "'");
            list.push_back(FineClass{*coarse, name});
        }
    }
    return t;
}

Taxonomy Taxonomy::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open taxonomy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const Taxonomy& Taxonomy::builtin() {
    static const Taxonomy t = parse(builtin_taxonomy_text());
    return t;
}

const std::vector<FineClass>& Taxonomy::fine_classes(CoarseClass c) const {
    return fine_[static_cast<std::size_t>(c)];
}

std::size_t Taxonomy::fine_class_count() const {
    std::size_t n = 0;
    for (const auto& list : fine_) n += list.size();
    return n;
}

Label Taxonomy::validate_label(std::string_view coarse, std::optional<std::string_view> fine) const {
    auto c = coarse_from_string(coarse);
    if (!c) throw UnknownCoarse(trim(coarse));
    if (!fine) return Label{*c, std::nullopt};

    const std::string name = upper(trim(*fine));
    if (name.empty()) return Label{*c, std::nullopt};
    const auto& list = fine_classes(*c);
    for (const FineClass& f : list)
        if (f.name == name) return Label{*c, name};

    // Distinguish a fine class filed under another coarse class from one
    // that does not exist at all.
    for (CoarseClass other : coarse_classes()) {
        if (other == *c) continue;
        for (const FineClass& f : fine_classes(other))
            if (f.name == name)
                throw FineCoarseMismatch(name, std::string(to_string(other)), std::string(to_string(*c)));
    }
    throw UnknownFine(name);
}

Label Taxonomy::parse_label(std::string_view text) const {
    std::string s = trim(text);
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) return validate_label(s);
    return validate_label(s.substr(0, colon), std::string_view(s).substr(colon + 1));
}

}  // namespace benqc
