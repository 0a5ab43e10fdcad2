#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace benqc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First-layer question classes. The order here is the canonical row order
// used everywhere (statistics tables, class indices, reports).
enum class CoarseClass : std::uint8_t { PER, ORG, LOC, TEM, NUM, METH, REA, DEF, MISC };

inline constexpr std::size_t kNumCoarseClasses = 9;

const std::array<CoarseClass, kNumCoarseClasses>& coarse_classes();
std::string_view to_string(CoarseClass c);
std::string_view coarse_long_name(CoarseClass c);
std::optional<CoarseClass> coarse_from_string(std::string_view s);

struct FineClass {
    CoarseClass coarse;
    std::string name;  // uppercase identifier, unique within its coarse class

    bool operator==(const FineClass&) const = default;
};

struct Label {
    CoarseClass coarse;
    std::optional<std::string> fine;  // name of a FineClass under `coarse`

    bool operator==(const Label&) const = default;

    // "COARSE" or "COARSE:FINE".
    std::string str() const;
};

struct UnknownCoarse : Error {
    explicit UnknownCoarse(const std::string& id)
        : Error("unknown coarse class: " + id) {}
};
struct UnknownFine : Error {
    explicit UnknownFine(const std::string& id)
        : Error("unknown fine class: " + id) {}
};
struct FineCoarseMismatch : Error {
    FineCoarseMismatch(const std::string& fine, const std::string& actual, const std::string& given)
        : Error("fine class " + fine + " belongs to " + actual + ", not " + given) {}
};
struct TaxonomyParseError : Error {
    TaxonomyParseError(std::size_t line, const std::string& what)
        : Error("taxonomy line " + std::to_string(line) + ": " + what) {}
};

// The two-layer class inventory. Immutable after load; fine classes with the
// same name under different coarse classes (e.g. LOC:OTHER vs PER:OTHER,
// CURRENCY under both DEF and MISC) are distinct entries keyed by parent.
class Taxonomy {
public:
    // Parses the line-oriented format `COARSE<TAB>FINE1,FINE2,...`.
    // Lines starting with '#' and blank lines are skipped; repeated coarse
    // rows append fine classes in order.
    static Taxonomy parse(std::string_view text);
    static Taxonomy load(const std::string& path);

    // The default inventory compiled into the library (same content as
    // data/taxonomy.tsv).
    static const Taxonomy& builtin();

    const std::vector<FineClass>& fine_classes(CoarseClass c) const;
    std::size_t fine_class_count() const;

    // Case-insensitive, whitespace-trimmed lookup. Throws UnknownCoarse,
    // UnknownFine or FineCoarseMismatch.
    Label validate_label(std::string_view coarse, std::optional<std::string_view> fine = std::nullopt) const;

    // Parses "COARSE" or "COARSE:FINE" via validate_label.
    Label parse_label(std::string_view text) const;

private:
    std::array<std::vector<FineClass>, kNumCoarseClasses> fine_;
};

}  // namespace benqc
