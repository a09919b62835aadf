#include "commands.hpp"
#include "config.hpp"

#include "semdex/errors.hpp"
#include "semdex/log.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    bool deterministic = false;
    std::optional<std::uint32_t> threads;
    std::optional<int> base_year;
};

void apply_overrides(semdex::cli::PipelineConfig& config, const Overrides& o,
                     const std::string& command) {
    if (o.seed) config.training.seed = *o.seed;
    if (o.deterministic) config.training.deterministic = true;
    if (o.threads) config.training.threads = *o.threads;
    if (o.base_year) {
        if (command == "topic")
            config.base_year_topic = *o.base_year;
        else if (command == "density")
            config.base_year_density = *o.base_year;
        else if (command == "centrality")
            config.base_year_edot = *o.base_year;
    }
    if (config.training.deterministic) config.training.threads = 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semdex - semantic index toolkit for country-year speech corpora"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    semdex::cli::ExportGraphOptions export_options;
    int export_year = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "pipeline config file (JSON)")
            ->required();
        cmd->add_option("--seed", overrides.seed, "override training seed");
        cmd->add_flag("--deterministic", overrides.deterministic,
                      "single-threaded, bit-reproducible runs");
        cmd->add_option("--threads", overrides.threads, "override worker thread count");
        return cmd;
    };

    auto* preprocess = add_common(app.add_subcommand(
        "preprocess", "ingest raw speeches and write the processed corpus"));
    auto* train = add_common(
        app.add_subcommand("train", "train the paragraph-vector model"));
    auto* topic = add_common(
        app.add_subcommand("topic", "topic-related semantic index series"));
    topic->add_option("--base-year", overrides.base_year, "override the topic base year");
    auto* centrality = add_common(app.add_subcommand(
        "centrality", "eigenvector-centrality index series (E and Edot)"));
    centrality->add_option("--base-year", overrides.base_year,
                           "override the Edot base year");
    auto* density = add_common(
        app.add_subcommand("density", "semantic network density index series"));
    density->add_option("--base-year", overrides.base_year,
                        "override the density base year");
    auto* correlate = add_common(app.add_subcommand(
        "correlate", "yearly Spearman correlation against voting agreement"));
    auto* export_graph = add_common(app.add_subcommand(
        "export-graph", "dump per-year edge lists for external network tools"));
    export_graph->add_option("--year", export_year, "dump a single year");
    export_graph->add_flag("--unfiltered", export_options.unfiltered,
                           "dump the complete cosine graph instead of the filtered one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are input errors
    }

    try {
        auto config = semdex::cli::load_config(config_path);
        CLI::App* active = app.get_subcommands().front();
        const std::string name = active->get_name();
        apply_overrides(config, overrides, name);

        if (active == preprocess) {
            semdex::cli::cmd_preprocess(config);
        } else if (active == train) {
            semdex::cli::cmd_train(config);
        } else if (active == topic) {
            semdex::cli::cmd_topic(config);
        } else if (active == centrality) {
            semdex::cli::cmd_centrality(config);
        } else if (active == density) {
            semdex::cli::cmd_density(config);
        } else if (active == correlate) {
            semdex::cli::cmd_correlate(config);
        } else if (active == export_graph) {
            if (export_year >= 0) export_options.year = export_year;
            semdex::cli::cmd_export_graph(config, export_options);
        }
        return 0;
    } catch (const semdex::InputError& e) {
        semdex::log::error(e.what());
        return 2;
    } catch (const std::exception& e) {
        semdex::log::error(e.what());
        return 1;
    }
}
