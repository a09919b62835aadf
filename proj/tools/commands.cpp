#include "commands.hpp"

#include "semdex/corpus.hpp"
#include "semdex/csv.hpp"
#include "semdex/errors.hpp"
#include "semdex/log.hpp"
#include "semdex/model_io.hpp"
#include "semdex/train.hpp"
#include "semdex/votes.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

namespace semdex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class OutputWriter {
public:
    OutputWriter(const PipelineConfig& config, std::string command)
        : config_(config), command_(std::move(command)), hash_(config_hash(config)) {
        fs::create_directories(config.output_dir);
    }

    std::ofstream open_csv(const std::string& filename, const std::string& header) {
        fs::path path = config_.output_dir / filename;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + path.string());
        out << "# config_hash=" << hash_ << '\n' << header << '\n';
        outputs_.push_back(filename);
        return out;
    }

    void note_output(const std::string& filename) { outputs_.push_back(filename); }

    void write_manifest() {
        json j;
        j["command"] = command_;
        j["config_hash"] = hash_;
        std::sort(outputs_.begin(), outputs_.end());
        j["outputs"] = outputs_;
        fs::path path = config_.output_dir / (command_ + "_manifest.json");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + path.string());
        out << j.dump(2) << '\n';
    }

    const std::string& hash() const { return hash_; }

private:
    const PipelineConfig& config_;
    std::string command_;
    std::string hash_;
    std::vector<std::string> outputs_;
};

embed::EmbeddingModel load_model_checked(const PipelineConfig& config) {
    if (!fs::exists(config.model_path))
        throw InputError("model file missing: " + config.model_path.string() +
                         " (run 'semdex train' first)");
    return embed::load_model(config.model_path);
}

semindex::YearRange effective_years(const PipelineConfig& config, const DocIndex& docs) {
    if (config.years) return *config.years;
    auto range = docs.year_range();
    if (!range) throw InputError("corpus has no parseable <ISO3>_<year> labels");
    return semindex::YearRange{range->first, range->second};
}

CountryGroup all_countries_group(const DocIndex& docs) {
    std::set<std::string> seen;
    for (const auto& [year, nodes] : docs.by_year())
        for (const auto& [country, row] : nodes) seen.insert(country);
    CountryGroup group;
    group.name = "all";
    group.members.assign(seen.begin(), seen.end());
    return group;
}

const CountryGroup* find_group(const PipelineConfig& config, const std::string& name) {
    for (const auto& g : config.groups)
        if (g.name == name) return &g;
    return nullptr;
}

// Filtered graphs for every year in range; years that cannot form a graph
// are skipped with a warning.
std::map<int, semnet::SemanticGraph> yearly_graphs(const embed::EmbeddingModel& model,
                                                   const DocIndex& docs,
                                                   semindex::YearRange years,
                                                   const semnet::FilterConfig* filter) {
    std::map<int, semnet::SemanticGraph> graphs;
    for (int y = years.first; y <= years.last; ++y) {
        const auto* present = docs.year(y);
        if (!present) continue;
        if (present->size() < 2) {
            log::warn("skipping " + std::to_string(y) + ": fewer than 2 countries");
            continue;
        }
        auto graph = semnet::build_graph(model, docs, y);
        graphs.emplace(y, filter ? semnet::filter_graph(graph, *filter) : std::move(graph));
    }
    return graphs;
}

std::string sanitize_filename(std::string name) {
    for (char& c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '-' || c == '_';
        if (!ok) c = '_';
    }
    return name;
}

} // namespace

void cmd_preprocess(const PipelineConfig& config) {
    if (config.corpus_dir.empty())
        throw InputError("config is missing corpus_dir");
    auto raw = corpus::ingest_corpus(config.corpus_dir);
    if (raw.empty()) throw InputError("no documents in " + config.corpus_dir.string());

    std::vector<corpus::ProcessedDocument> docs(raw.size());
    const unsigned nthreads = std::max<unsigned>(1, config.training.threads);
    if (nthreads <= 1 || raw.size() < 2) {
        for (std::size_t i = 0; i < raw.size(); ++i)
            docs[i] = corpus::process_document(raw[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < raw.size();
                     i = next.fetch_add(1))
                    docs[i] = corpus::process_document(raw[i]);
            });
        for (auto& th : pool) th.join();
    }

    OutputWriter writer(config, "preprocess");
    fs::create_directories(config.processed_path.parent_path());
    corpus::write_processed(config.processed_path, docs);
    writer.note_output(config.processed_path.filename().string());
    writer.write_manifest();

    double unique_sum = 0.0;
    for (const auto& doc : docs) {
        std::set<std::string> unique(doc.tokens.begin(), doc.tokens.end());
        unique_sum += static_cast<double>(unique.size());
    }
    std::cout << "documents: " << docs.size() << '\n';
    std::cout << "mean unique tokens per document: "
              << unique_sum / static_cast<double>(docs.size()) << '\n';
    std::cout << "processed corpus written to " << config.processed_path.string() << '\n';
}

void cmd_train(const PipelineConfig& config) {
    if (!fs::exists(config.processed_path))
        throw InputError("processed corpus missing: " + config.processed_path.string() +
                         " (run 'semdex preprocess' first)");
    auto docs = corpus::read_processed(config.processed_path);
    auto vocab = corpus::build_vocabulary(docs, config.min_count);

    embed::TrainStats stats;
    auto model = embed::train(docs, vocab, config.training, &stats);

    OutputWriter writer(config, "train");
    fs::create_directories(config.model_path.parent_path());
    embed::save_model(model, config.model_path);
    writer.note_output(config.model_path.filename().string());
    writer.write_manifest();

    std::cout << "vocabulary: " << vocab.size() << " words, " << vocab.doc_labels().size()
              << " document labels\n";
    std::cout << "positions per epoch: " << stats.positions_per_epoch << '\n';
    std::cout << "model written to " << config.model_path.string() << '\n';
}

void cmd_topic(const PipelineConfig& config) {
    auto model = load_model_checked(config);
    DocIndex docs(model.vocab, config.aliases);
    auto years = effective_years(config, docs);

    OutputWriter writer(config, "topic");
    for (const auto& group_name : config.topic_groups) {
        CountryGroup group;
        if (group_name == "all") {
            group = all_countries_group(docs);
        } else if (const CountryGroup* g = find_group(config, group_name)) {
            group = *g;
        } else {
            throw InputError("topic_groups references unknown group '" + group_name + "'");
        }
        for (const auto& theme : config.themes) {
            auto series = semindex::topic_index(model, docs, group, theme,
                                                config.base_year_topic, years);
            std::string filename =
                group_name == "all"
                    ? "topic_" + sanitize_filename(theme.name) + ".csv"
                    : "topic_" + sanitize_filename(group_name) + "_" +
                          sanitize_filename(theme.name) + ".csv";
            auto out = writer.open_csv(filename, "name,year,value,effective_n");
            for (const auto& [year, value] : series.points)
                out << series.name << ',' << year << ',' << csv::format_double(value)
                    << ',' << series.effective_n.at(year) << '\n';
        }
    }
    writer.write_manifest();
    std::cout << "topic indices written to " << config.output_dir.string() << '\n';
}

void cmd_centrality(const PipelineConfig& config) {
    auto model = load_model_checked(config);
    DocIndex docs(model.vocab, config.aliases);
    auto years = effective_years(config, docs);
    auto graphs = yearly_graphs(model, docs, years, &config.filter);

    // Centrality per year once, E per group.
    std::map<int, semnet::CentralityVector> centralities;
    for (const auto& [year, graph] : graphs) {
        auto centrality = semnet::eigenvector_centrality(graph);
        if (centrality.empty_graph) {
            log::warn("skipping " + std::to_string(year) + ": filtered graph has no edges");
            continue;
        }
        centralities.emplace(year, std::move(centrality));
    }

    OutputWriter writer(config, "centrality");
    for (const auto& group : config.groups) {
        IndexSeries e_series;
        e_series.name = group.name;
        std::map<int, std::pair<std::size_t, std::size_t>> shape; // year -> nodes, edges
        for (const auto& [year, centrality] : centralities) {
            const auto& graph = graphs.at(year);
            bool any_member = false;
            for (const auto& m : group.members)
                if (centrality.values.count(m)) any_member = true;
            if (!any_member) continue;
            auto e = semnet::centrality_index_E(graph, centrality, group);
            e_series.points[year] = e.value;
            e_series.effective_n[year] = e.members_present;
            shape[year] = {graph.node_count(), graph.edge_count()};
        }
        auto out = writer.open_csv("centrality_E_" + sanitize_filename(group.name) + ".csv",
                                   "name,year,value,n_nodes,n_edges");
        for (const auto& [year, value] : e_series.points)
            out << group.name << ',' << year << ',' << csv::format_double(value) << ','
                << shape.at(year).first << ',' << shape.at(year).second << '\n';

        if (e_series.points.count(config.base_year_edot)) {
            auto edot = semnet::centrality_index_Edot(e_series, config.base_year_edot);
            auto out2 =
                writer.open_csv("centrality_Edot_" + sanitize_filename(group.name) + ".csv",
                                "name,year,value,n_nodes,n_edges");
            for (const auto& [year, value] : edot.points)
                out2 << group.name << ',' << year << ',' << csv::format_double(value) << ','
                     << shape.at(year).first << ',' << shape.at(year).second << '\n';
        } else {
            log::warn("group '" + group.name + "': no E value in base year " +
                      std::to_string(config.base_year_edot) + ", Edot series skipped");
        }
    }
    writer.write_manifest();
    std::cout << "centrality indices written to " << config.output_dir.string() << '\n';
}

void cmd_density(const PipelineConfig& config) {
    auto model = load_model_checked(config);
    DocIndex docs(model.vocab, config.aliases);
    auto years = effective_years(config, docs);

    semnet::FilterConfig stage1 = config.filter;
    stage1.threshold_condition = false;
    semnet::FilterConfig both = config.filter;

    OutputWriter writer(config, "density");
    struct Variant {
        const char* filename;
        const char* series_name;
        const semnet::FilterConfig* filter;
    };
    const Variant variants[] = {
        {"density_stage1.csv", "density_stage1", &stage1},
        {"density_filtered.csv", "density_filtered", &both},
    };
    for (const auto& variant : variants) {
        auto graphs = yearly_graphs(model, docs, years, variant.filter);
        auto series = semnet::density_index(graphs, config.base_year_density);
        auto out = writer.open_csv(variant.filename, "name,year,value,n_nodes,n_edges");
        for (const auto& [year, value] : series.points)
            out << variant.series_name << ',' << year << ',' << csv::format_double(value)
                << ',' << graphs.at(year).node_count() << ',' << graphs.at(year).edge_count()
                << '\n';
    }
    writer.write_manifest();
    std::cout << "density indices written to " << config.output_dir.string() << '\n';
}

void cmd_correlate(const PipelineConfig& config) {
    auto model = load_model_checked(config);
    if (config.votes_path.empty())
        throw InputError("config is missing votes_path");
    if (!fs::exists(config.votes_path))
        throw InputError("votes file missing: " + config.votes_path.string());
    auto votes = votes::load_votes(config.votes_path);
    DocIndex docs(model.vocab, config.aliases);
    auto years = effective_years(config, docs);

    auto points = votes::yearly_correlation(model, docs, votes, config.reference_country,
                                            years, config.aliases);

    OutputWriter writer(config, "correlate");
    auto out = writer.open_csv(
        "correlation_" + sanitize_filename(config.reference_country) + ".csv",
        "year,rho,n");
    for (const auto& p : points)
        out << p.year << ',' << csv::format_double(p.rho) << ',' << p.n << '\n';
    writer.write_manifest();
    std::cout << "correlation series written to " << config.output_dir.string() << '\n';
}

void cmd_export_graph(const PipelineConfig& config, const ExportGraphOptions& options) {
    auto model = load_model_checked(config);
    DocIndex docs(model.vocab, config.aliases);
    auto years = effective_years(config, docs);
    if (options.year) years = {*options.year, *options.year};

    auto graphs = yearly_graphs(model, docs, years,
                                options.unfiltered ? nullptr : &config.filter);
    if (graphs.empty()) throw InputError("no year in range can form a graph");

    OutputWriter writer(config, "export-graph");
    for (const auto& [year, graph] : graphs) {
        auto out = writer.open_csv("graph_" + std::to_string(year) + ".csv",
                                   "country_a,country_b,weight");
        for (const auto& edge : graph.edges())
            out << graph.nodes()[edge.a] << ',' << graph.nodes()[edge.b] << ','
                << csv::format_double(edge.weight) << '\n';
    }
    writer.write_manifest();
    std::cout << "graph dumps written to " << config.output_dir.string() << '\n';
}

} // namespace semdex::cli
