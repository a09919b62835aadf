#pragma once

#include "semdex/huffman.hpp"
#include "semdex/matrix.hpp"
#include "semdex/model.hpp"

#include <cmath>
#include <span>
#include <string_view>

namespace semdex::embed {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// log p(word | context) factored along the Huffman path: at each internal
/// node the branch probability is sigmoid(+-(node_out[n] . context)), the
/// sign picked by the code bit (bit 0 -> +). Accumulation is in double
/// regardless of the matrix scalar.
template <class Real>
double hs_log_prob(const MatrixT<Real>& node_out, const HuffmanTree& tree,
                   std::size_t word, std::span<const Real> context) {
    const auto& path = tree.paths[word];
    const auto& code = tree.codes[word];
    double logp = 0.0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        auto row = node_out.row(static_cast<std::size_t>(path[k]));
        double dot = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j)
            dot += static_cast<double>(row[j]) * static_cast<double>(context[j]);
        double sign = code[k] == 0 ? 1.0 : -1.0;
        logp += std::log(sigmoid(sign * dot));
    }
    return logp;
}

/// Gradients of -log p(word | context) with respect to the context vector
/// and the node_out rows on the word's path. grad_node_out must have the
/// same shape as node_out; touched rows are accumulated into it.
template <class Real>
void hs_loss_gradients(const MatrixT<Real>& node_out, const HuffmanTree& tree,
                       std::size_t word, std::span<const Real> context,
                       std::span<Real> grad_context, MatrixT<Real>& grad_node_out) {
    const auto& path = tree.paths[word];
    const auto& code = tree.codes[word];
    for (std::size_t j = 0; j < grad_context.size(); ++j) grad_context[j] = Real(0);
    for (std::size_t k = 0; k < path.size(); ++k) {
        auto row = node_out.row(static_cast<std::size_t>(path[k]));
        auto grad_row = grad_node_out.row(static_cast<std::size_t>(path[k]));
        double dot = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j)
            dot += static_cast<double>(row[j]) * static_cast<double>(context[j]);
        // d(-log p)/d(dot) = sigmoid(dot) - target, target = 1 - code bit
        double g = sigmoid(dot) - (1.0 - static_cast<double>(code[k]));
        for (std::size_t j = 0; j < row.size(); ++j) {
            grad_context[j] += static_cast<Real>(g * static_cast<double>(row[j]));
            grad_row[j] += static_cast<Real>(g * static_cast<double>(context[j]));
        }
    }
}

/// p(word | context) for a trained model; sums to 1 over the vocabulary.
/// Throws std::invalid_argument for words outside the vocabulary.
double hs_probability(const EmbeddingModel& model, std::span<const float> context,
                      std::string_view word);

} // namespace semdex::embed
