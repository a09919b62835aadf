#include "semdex/hs.hpp"

#include <stdexcept>

namespace semdex::embed {

double hs_probability(const EmbeddingModel& model, std::span<const float> context,
                      std::string_view word) {
    auto idx = model.vocab.index_of(word);
    if (!idx)
        throw std::invalid_argument("hs_probability: word not in vocabulary: " +
                                    std::string(word));
    return std::exp(hs_log_prob(model.node_out, model.tree, *idx, context));
}

std::span<const float> EmbeddingModel::word_vector(std::string_view word) const {
    auto idx = vocab.index_of(word);
    if (!idx)
        throw std::invalid_argument("word not in vocabulary: " + std::string(word));
    return word_in.row(*idx);
}

std::span<const float> EmbeddingModel::doc_vector(std::string_view label) const {
    auto idx = vocab.label_index(label);
    if (!idx)
        throw std::invalid_argument("unknown document label: " + std::string(label));
    return doc_in.row(*idx);
}

void TrainingConfig::validate_and_normalize() {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (!(alpha_min > 0.0) || !(alpha_min <= alpha0))
        throw std::invalid_argument("need 0 < alpha_min <= alpha0");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (subsample < 0.0) throw std::invalid_argument("subsample must be >= 0");
    if (deterministic) threads = 1;
}

} // namespace semdex::embed
