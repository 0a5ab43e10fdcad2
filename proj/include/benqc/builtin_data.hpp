#pragma once

#include <string_view>

namespace benqc {

// Default data shipped with the library. Byte-identical copies live under
// data/ for use with the CLI's --taxonomy / --lexicons / corpus flags.
std::string_view builtin_taxonomy_text();
std::string_view builtin_interrogatives_text();
std::string_view builtin_gazetteers_text();
std::string_view builtin_sample_jsonl();
std::string_view builtin_sample_manifest_json();

}  // namespace benqc
