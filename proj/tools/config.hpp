#pragma once

#include "semdex/docindex.hpp"
#include "semdex/model.hpp"
#include "semdex/semindex.hpp"
#include "semdex/semnet.hpp"
#include "semdex/series.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semdex::cli {

/// Fully resolved pipeline configuration: file defaults, then config
/// values, then command-line overrides. The provenance hash covers every
/// field below.
struct PipelineConfig {
    std::filesystem::path corpus_dir;
    std::filesystem::path processed_path;
    std::filesystem::path model_path;
    std::filesystem::path output_dir;
    std::filesystem::path votes_path;
    std::string reference_country = "USA";

    embed::TrainingConfig training;
    std::uint32_t min_count = 5;

    std::vector<semindex::PolicyTheme> themes;
    std::vector<CountryGroup> groups;
    // Which groups the topic command evaluates; "all" means every country
    // observed in the corpus.
    std::vector<std::string> topic_groups = {"all"};

    semnet::FilterConfig filter;

    int base_year_topic = 1995;
    int base_year_density = 1970;
    int base_year_edot = 1995;

    AliasTable aliases;
    std::optional<semindex::YearRange> years; // default: derived from the data
};

/// Parses the JSON config file; unset fields fall back to the built-in
/// defaults (Table-style themes, EU-15 and emerging-economy groups,
/// filter 95/0.6, base years 1995/1970/1995). Relative paths are resolved
/// against the config file's directory.
PipelineConfig load_config(const std::filesystem::path& path);

/// Deterministic serialization of every field; two configs hash equally
/// iff all fields agree.
std::string config_hash(const PipelineConfig& config);

PipelineConfig default_config();

} // namespace semdex::cli
