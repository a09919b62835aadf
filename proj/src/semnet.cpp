#include "semdex/semnet.hpp"

#include "semdex/semindex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semdex::semnet {

SemanticGraph::SemanticGraph(int year, std::vector<std::string> nodes)
    : year_(year), nodes_(std::move(nodes)), weights_(nodes_.size() * nodes_.size(), 0.0),
      present_(nodes_.size() * nodes_.size(), 0) {}

std::optional<std::size_t> SemanticGraph::node_index(const std::string& country) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), country);
    if (it == nodes_.end() || *it != country) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

void SemanticGraph::set_edge(std::size_t a, std::size_t b, double weight) {
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    weights_[at(a, b)] = weights_[at(b, a)] = weight;
    present_[at(a, b)] = present_[at(b, a)] = 1;
}

void SemanticGraph::remove_edge(std::size_t a, std::size_t b) {
    present_[at(a, b)] = present_[at(b, a)] = 0;
}

bool SemanticGraph::has_edge(std::size_t a, std::size_t b) const {
    return a != b && present_[at(a, b)] != 0;
}

double SemanticGraph::weight(std::size_t a, std::size_t b) const {
    return weights_[at(a, b)];
}

std::size_t SemanticGraph::edge_count() const {
    std::size_t n = 0;
    for (std::size_t a = 0; a < nodes_.size(); ++a)
        for (std::size_t b = a + 1; b < nodes_.size(); ++b)
            if (present_[at(a, b)]) ++n;
    return n;
}

double SemanticGraph::density() const {
    const std::size_t n = nodes_.size();
    if (n < 2) return 0.0;
    return static_cast<double>(edge_count()) / (static_cast<double>(n) * (n - 1) / 2.0);
}

std::vector<SemanticGraph::Edge> SemanticGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t a = 0; a < nodes_.size(); ++a)
        for (std::size_t b = a + 1; b < nodes_.size(); ++b)
            if (present_[at(a, b)]) out.push_back(Edge{a, b, weights_[at(a, b)]});
    return out;
}

void FilterConfig::validate() const {
    if (!(percentile > 0.0 && percentile < 100.0))
        throw std::invalid_argument("filter percentile must lie in (0, 100)");
}

double percentile(std::vector<double> values, double pct, PercentileMethod method) {
    if (values.empty()) throw std::invalid_argument("percentile of empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    if (method == PercentileMethod::NearestRank) {
        std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * m));
        rank = std::clamp<std::size_t>(rank, 1, m);
        return values[rank - 1];
    }
    double pos = pct / 100.0 * static_cast<double>(m - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= m) return values[m - 1];
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

SemanticGraph build_graph(const embed::EmbeddingModel& model, const DocIndex& docs,
                          int year) {
    const auto* present = docs.year(year);
    if (!present || present->size() < 2)
        throw std::invalid_argument("build_graph: fewer than 2 countries in " +
                                    std::to_string(year));
    std::vector<std::string> nodes;
    std::vector<std::size_t> rows;
    nodes.reserve(present->size());
    for (const auto& [country, row] : *present) {
        nodes.push_back(country);
        rows.push_back(row);
    }
    SemanticGraph graph(year, std::move(nodes));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            graph.set_edge(a, b,
                           semindex::cosine<float>(model.doc_in.row(rows[a]),
                                                   model.doc_in.row(rows[b])));
    return graph;
}

SemanticGraph filter_graph(const SemanticGraph& graph, const FilterConfig& config) {
    if (graph.filtered())
        throw std::invalid_argument("filter_graph expects an unfiltered graph");
    config.validate();

    const std::size_t n = graph.node_count();
    // Per-node percentile of its incident edge weights in the input graph.
    std::vector<double> cutoff(n, 0.0);
    if (config.percentile_condition) {
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<double> incident;
            incident.reserve(n - 1);
            for (std::size_t b = 0; b < n; ++b)
                if (graph.has_edge(a, b)) incident.push_back(graph.weight(a, b));
            if (!incident.empty())
                cutoff[a] = percentile(std::move(incident), config.percentile,
                                       config.percentile_method);
        }
    }

    SemanticGraph out = graph;
    for (const auto& e : graph.edges()) {
        bool keep = true;
        if (config.percentile_condition)
            keep = e.weight >= cutoff[e.a] || e.weight >= cutoff[e.b];
        if (keep && config.threshold_condition) keep = e.weight > config.threshold;
        if (!keep) out.remove_edge(e.a, e.b);
    }
    out.set_filtered(true);
    return out;
}

IndexSeries density_index(const std::map<int, SemanticGraph>& graphs, int base_year) {
    auto base_it = graphs.find(base_year);
    if (base_it == graphs.end())
        throw std::invalid_argument("density_index: no graph for base year " +
                                    std::to_string(base_year));
    const double base = base_it->second.density();
    if (base == 0.0)
        throw std::runtime_error("density_index: degenerate base year " +
                                 std::to_string(base_year));
    IndexSeries series;
    series.name = "density";
    series.base_year = base_year;
    for (const auto& [year, graph] : graphs) {
        series.points[year] = relative_deviation(graph.density(), base);
        series.effective_n[year] = static_cast<int>(graph.node_count());
    }
    return series;
}

CentralityVector eigenvector_centrality(const SemanticGraph& graph) {
    const std::size_t n = graph.node_count();
    CentralityVector result;
    result.year = graph.year();
    if (n == 0) {
        result.empty_graph = true;
        return result;
    }

    if (graph.edge_count() == 0) {
        result.empty_graph = true;
        for (const auto& node : graph.nodes()) result.values[node] = 0.0;
        return result;
    }

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < 1000; ++iter) {
        for (std::size_t a = 0; a < n; ++a) {
            double sum = 0.0;
            for (std::size_t b = 0; b < n; ++b)
                if (graph.has_edge(a, b)) sum += graph.weight(a, b) * v[b];
            next[a] = sum;
        }
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) break; // no mass left; treat as converged
        double delta = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            next[a] /= norm;
            double diff = next[a] - v[a];
            delta += diff * diff;
        }
        v.swap(next);
        if (std::sqrt(delta) < 1e-10) break;
    }

    // Orient the Perron vector non-negatively.
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum < 0.0)
        for (double& x : v) x = -x;

    for (std::size_t a = 0; a < n; ++a) result.values[graph.nodes()[a]] = v[a];
    return result;
}

GroupCentralityIndex centrality_index_E(const SemanticGraph& graph,
                                        const CentralityVector& centrality,
                                        const CountryGroup& group) {
    group.validate();
    if (centrality.values.empty())
        throw std::invalid_argument("centrality_index_E: empty centrality vector");

    double all_sum = 0.0;
    for (const auto& node : graph.nodes()) {
        auto it = centrality.values.find(node);
        if (it == centrality.values.end())
            throw std::invalid_argument("centrality vector does not cover node " + node);
        all_sum += it->second;
    }
    const double all_mean = all_sum / static_cast<double>(graph.node_count());
    if (all_mean == 0.0)
        throw std::runtime_error("centrality_index_E: zero mean centrality (empty graph?)");

    double group_sum = 0.0;
    int present = 0;
    for (const auto& member : group.members) {
        auto it = centrality.values.find(member);
        if (it == centrality.values.end()) continue;
        group_sum += it->second;
        ++present;
    }
    if (present == 0)
        throw std::invalid_argument("centrality_index_E: no member of '" + group.name +
                                    "' is present in " + std::to_string(graph.year()));
    const double group_mean = group_sum / present;
    return GroupCentralityIndex{(group_mean - all_mean) / all_mean, present};
}

IndexSeries centrality_index_Edot(const IndexSeries& e_series, int base_year) {
    auto base_it = e_series.points.find(base_year);
    if (base_it == e_series.points.end())
        throw std::invalid_argument("centrality_index_Edot: base year " +
                                    std::to_string(base_year) + " missing from E series");
    const double base = base_it->second;
    if (std::abs(base) < 1e-12)
        throw std::runtime_error("centrality_index_Edot: degenerate base year " +
                                 std::to_string(base_year));
    IndexSeries series;
    series.name = e_series.name;
    series.base_year = base_year;
    for (const auto& [year, value] : e_series.points)
        series.points[year] = relative_deviation(value, base);
    series.effective_n = e_series.effective_n;
    return series;
}

} // namespace semdex::semnet
