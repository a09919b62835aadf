#pragma once

#include <string>
#include <string_view>

namespace semdex::corpus {

/// Snowball English (Porter2) stemmer. Input is ASCII-lowercased before
/// stemming; words of two letters or less pass through unchanged.
std::string stem_english(std::string_view word);

} // namespace semdex::corpus
