#pragma once

#include "semdex/corpus.hpp"
#include "semdex/model.hpp"

#include <cstdint>

namespace semdex::embed {

struct TrainStats {
    std::uint64_t positions_per_epoch = 0;
    std::uint64_t total_steps = 0;
    double final_alpha = 0.0;
};

/// Learning rate at a 0-based global step; decays linearly from alpha0 at
/// step 0 to alpha_min at step total_steps - 1.
double linear_lr(double alpha0, double alpha_min, std::uint64_t step,
                 std::uint64_t total_steps);

/// Trains a PV-DM model with hierarchical softmax: at each in-vocabulary
/// position the context vector is the mean of the document row and the
/// in-window word rows, and one SGD step is taken on the path loss.
/// deterministic=true with a fixed seed gives bit-reproducible output.
EmbeddingModel train(const std::vector<corpus::ProcessedDocument>& docs,
                     const corpus::Vocabulary& vocab, const TrainingConfig& config,
                     TrainStats* stats = nullptr);

/// Total hierarchical-softmax loss of the corpus under the model, using
/// the full window (no reduction); deterministic, used for monitoring.
double corpus_log_loss(const EmbeddingModel& model,
                       const std::vector<corpus::ProcessedDocument>& docs);

} // namespace semdex::embed
