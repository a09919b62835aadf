#pragma once

#include "config.hpp"

#include <optional>
#include <string>

namespace semdex::cli {

void cmd_preprocess(const PipelineConfig& config);
void cmd_train(const PipelineConfig& config);
void cmd_topic(const PipelineConfig& config);
void cmd_centrality(const PipelineConfig& config);
void cmd_density(const PipelineConfig& config);
void cmd_correlate(const PipelineConfig& config);

struct ExportGraphOptions {
    std::optional<int> year; // absent: every year in range
    bool unfiltered = false;
};
void cmd_export_graph(const PipelineConfig& config, const ExportGraphOptions& options);

} // namespace semdex::cli
