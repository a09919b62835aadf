#pragma once

#include "semdex/corpus.hpp"
#include "semdex/model.hpp"

#include <random>
#include <string>
#include <vector>

namespace semdex::test {

// Vocabulary over explicit (word, count) pairs plus document labels.
inline corpus::Vocabulary make_vocab(
    std::vector<std::pair<std::string, std::uint64_t>> words,
    std::vector<std::string> labels = {}, std::uint32_t min_count = 1) {
    std::vector<corpus::ProcessedDocument> docs;
    docs.reserve(labels.size());
    for (auto& l : labels) docs.push_back({l, {}});
    std::vector<corpus::VocabEntry> entries;
    for (auto& [w, c] : words) entries.push_back({w, c});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.word < b.word;
    });
    corpus::Vocabulary vocab(std::move(entries),
                             [&] {
                                 std::vector<std::string> ls;
                                 for (auto& d : docs) ls.push_back(d.label);
                                 return ls;
                             }(),
                             min_count);
    return vocab;
}

// Model with randomized weights over the given vocabulary, for tests that
// need a structurally valid model without training.
inline embed::EmbeddingModel make_random_model(
    std::vector<std::pair<std::string, std::uint64_t>> words,
    std::vector<std::string> labels, std::uint32_t dim, std::uint64_t seed) {
    embed::EmbeddingModel model;
    model.vocab = make_vocab(std::move(words), std::move(labels));
    model.tree = embed::build_huffman(model.vocab.words());
    model.config.dim = dim;
    const std::size_t v = model.vocab.size();
    const std::size_t d = model.vocab.doc_labels().size();
    model.word_in = Matrix(v, dim);
    model.doc_in = Matrix(d, dim);
    model.node_out = Matrix(std::max<std::size_t>(v >= 2 ? v - 1 : 1, 1), dim);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    for (std::size_t i = 0; i < model.word_in.size(); ++i) model.word_in.data()[i] = u(rng);
    for (std::size_t i = 0; i < model.doc_in.size(); ++i) model.doc_in.data()[i] = u(rng);
    for (std::size_t i = 0; i < model.node_out.size(); ++i) model.node_out.data()[i] = u(rng);
    return model;
}

// Synthetic two-cluster corpus: the first half of the documents draws from
// one 50-word vocabulary, the second half from a disjoint one.
inline std::vector<corpus::ProcessedDocument> make_cluster_corpus(
    std::size_t docs_per_cluster = 20, std::size_t tokens_per_doc = 60,
    std::uint64_t seed = 7) {
    std::vector<std::string> topic_a, topic_b;
    for (int i = 0; i < 50; ++i) {
        topic_a.push_back("alpha" + std::to_string(i));
        topic_b.push_back("beta" + std::to_string(i));
    }
    std::mt19937_64 rng(seed);
    std::vector<corpus::ProcessedDocument> docs;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& pool = c == 0 ? topic_a : topic_b;
        for (std::size_t d = 0; d < docs_per_cluster; ++d) {
            corpus::ProcessedDocument doc;
            doc.label = (c == 0 ? "AAA_" : "BBB_") + std::to_string(2000 + d);
            for (std::size_t t = 0; t < tokens_per_doc; ++t)
                doc.tokens.push_back(pool[rng() % pool.size()]);
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

} // namespace semdex::test
