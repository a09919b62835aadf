#pragma once

#include "semdex/corpus.hpp"
#include "semdex/huffman.hpp"
#include "semdex/matrix.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace semdex::embed {

struct TrainingConfig {
    std::uint32_t dim = 200;
    std::uint32_t window = 10;
    double alpha0 = 0.025;
    double alpha_min = 0.0001;
    std::uint32_t epochs = 10;
    std::uint64_t seed = 1;
    bool deterministic = false;
    std::uint32_t threads = 1;
    // Frequent-word subsampling threshold; 0 disables (the default).
    double subsample = 0.0;
    // Per-position effective window drawn uniformly from 1..window.
    bool reduced_window = true;

    /// Throws std::invalid_argument on violated invariants. deterministic
    /// mode forces threads = 1.
    void validate_and_normalize();
};

/// Trained paragraph-vector model: input vectors for words and document
/// labels, output vectors for Huffman-internal nodes.
struct EmbeddingModel {
    Matrix word_in;  // V x dim
    Matrix doc_in;   // D x dim
    Matrix node_out; // max(V-1, 1) x dim
    corpus::Vocabulary vocab;
    HuffmanTree tree;
    TrainingConfig config;

    std::span<const float> word_vector(std::string_view word) const;
    std::span<const float> doc_vector(std::string_view label) const;
};

} // namespace semdex::embed
