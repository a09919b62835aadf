#pragma once

#include "semdex/docindex.hpp"
#include "semdex/model.hpp"
#include "semdex/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace semdex::semnet {

/// Per-year weighted graph over the countries speaking that year; weights
/// are cosines of the country-year document vectors. Unfiltered graphs
/// are complete.
class SemanticGraph {
public:
    SemanticGraph() = default;
    SemanticGraph(int year, std::vector<std::string> nodes);

    int year() const { return year_; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    std::optional<std::size_t> node_index(const std::string& country) const;

    bool filtered() const { return filtered_; }
    void set_filtered(bool f) { filtered_ = f; }

    void set_edge(std::size_t a, std::size_t b, double weight);
    void remove_edge(std::size_t a, std::size_t b);
    bool has_edge(std::size_t a, std::size_t b) const;
    double weight(std::size_t a, std::size_t b) const;

    std::size_t edge_count() const;
    /// |edges| / (n(n-1)/2); 0 for graphs with fewer than 2 nodes.
    double density() const;

    struct Edge {
        std::size_t a, b;
        double weight;
    };
    std::vector<Edge> edges() const; // a < b, ordered

private:
    std::size_t at(std::size_t a, std::size_t b) const { return a * nodes_.size() + b; }
    int year_ = 0;
    std::vector<std::string> nodes_;
    std::vector<double> weights_;
    std::vector<char> present_;
    bool filtered_ = false;
};

enum class PercentileMethod { LinearInterpolation, NearestRank };

struct FilterConfig {
    double percentile = 95.0;
    double threshold = 0.6;
    PercentileMethod percentile_method = PercentileMethod::LinearInterpolation;
    // The two conditions can be applied independently (the density series
    // is reported with only the percentile stage as well as with both).
    bool percentile_condition = true;
    bool threshold_condition = true;

    void validate() const; // 0 < percentile < 100
};

/// Percentile of a sample under the configured method; linear
/// interpolation between order statistics by default.
double percentile(std::vector<double> values, double pct, PercentileMethod method);

/// Complete cosine graph over the countries present in `year`. Throws
/// when fewer than 2 countries spoke that year.
SemanticGraph build_graph(const embed::EmbeddingModel& model, const DocIndex& docs,
                          int year);

/// Keeps an edge iff (weight >= p-th percentile of either endpoint's edge
/// weights, when enabled) and (weight > threshold, when enabled). Only
/// defined on unfiltered graphs; the node set is preserved.
SemanticGraph filter_graph(const SemanticGraph& graph, const FilterConfig& config);

/// Edge density of each year's graph as relative deviation from the base
/// year. Throws when the base year is missing or has zero density.
IndexSeries density_index(const std::map<int, SemanticGraph>& graphs, int base_year);

struct CentralityVector {
    int year = 0;
    std::map<std::string, double> values; // unit L2 over nodes, >= 0
    bool empty_graph = false;             // no edges: all values are 0
};

/// Dominant eigenvector of the weighted adjacency matrix by power
/// iteration (uniform positive start, L2 change < 1e-10 or 1000 rounds).
CentralityVector eigenvector_centrality(const SemanticGraph& graph);

struct GroupCentralityIndex {
    double value = 0.0;
    int members_present = 0;
};

/// Relative deviation of the group's mean centrality from the mean over
/// all nodes. Absent members are dropped (count reported); throws when no
/// member is present or the all-node mean is zero.
GroupCentralityIndex centrality_index_E(const SemanticGraph& graph,
                                        const CentralityVector& centrality,
                                        const CountryGroup& group);

/// Deviation of an E series from its base year: (E_t - E_b) / |E_b|.
IndexSeries centrality_index_Edot(const IndexSeries& e_series, int base_year);

} // namespace semdex::semnet
