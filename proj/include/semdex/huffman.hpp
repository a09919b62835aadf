#pragma once

#include "semdex/corpus.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace semdex::embed {

/// Binary prefix-code tree over word frequencies, driving hierarchical
/// softmax. codes[w][k] is the branch bit taken at internal node
/// paths[w][k], root first; bit 0 = first-merged (left) child.
struct HuffmanTree {
    std::vector<std::vector<std::uint8_t>> codes;
    std::vector<std::vector<std::int32_t>> paths;
    std::int32_t internal_nodes = 0;

    // Bump when the deterministic tie-break below changes; recorded in the
    // model container so stored models stay reconstructible.
    static constexpr std::uint32_t kTieBreakVersion = 1;
};

/// Builds the Huffman tree over (count, word) pairs. Merging is fully
/// deterministic: candidates are ordered by count, then leaves before
/// internal nodes, then lexicographic word (leaves) or creation order
/// (internal nodes). Throws std::invalid_argument on empty input.
HuffmanTree build_huffman(std::span<const corpus::VocabEntry> words);

} // namespace semdex::embed
