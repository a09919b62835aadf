#include "semdex/semindex.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace semdex {

void CountryGroup::validate() const {
    if (members.empty())
        throw std::invalid_argument("country group '" + name + "' is empty");
    std::set<std::string> seen;
    for (const auto& m : members)
        if (!seen.insert(m).second)
            throw std::invalid_argument("country group '" + name +
                                        "' lists " + m + " twice");
}

namespace semindex {

template <class Real>
double cosine(std::span<const Real> a, std::span<const Real> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double x = static_cast<double>(a[i]);
        double y = static_cast<double>(b[i]);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("cosine undefined for a zero vector");
    return dot / (na * nb);
}

template double cosine<float>(std::span<const float>, std::span<const float>);
template double cosine<double>(std::span<const double>, std::span<const double>);

std::vector<float> theme_vector(const embed::EmbeddingModel& model,
                                const PolicyTheme& theme) {
    if (theme.keywords.empty())
        throw std::invalid_argument("theme '" + theme.name + "' has no keywords");
    std::vector<std::string> missing;
    for (const auto& kw : theme.keywords)
        if (!model.vocab.contains(kw)) missing.push_back(kw);
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "theme '" << theme.name << "' keywords missing from vocabulary:";
        for (const auto& kw : missing) msg << ' ' << kw;
        throw std::invalid_argument(msg.str());
    }
    std::vector<float> mean(model.config.dim, 0.0f);
    for (const auto& kw : theme.keywords) {
        auto row = model.word_vector(kw);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += row[j];
    }
    const float inv = 1.0f / static_cast<float>(theme.keywords.size());
    for (float& x : mean) x *= inv;
    return mean;
}

namespace {

// Mean cosine between the present group members' doc vectors and the
// theme vector; nullopt when no member has a document that year.
struct YearMean {
    double mean;
    int n;
};

std::optional<YearMean> group_year_mean(const embed::EmbeddingModel& model,
                                        const DocIndex& docs, const CountryGroup& group,
                                        std::span<const float> theme_vec, int year) {
    double sum = 0.0;
    int n = 0;
    for (const auto& member : group.members) {
        auto row = docs.find(member, year);
        if (!row) continue;
        sum += cosine<float>(model.doc_in.row(*row), theme_vec);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return YearMean{sum / n, n};
}

} // namespace

IndexSeries topic_index(const embed::EmbeddingModel& model, const DocIndex& docs,
                        const CountryGroup& group, const PolicyTheme& theme,
                        int base_year, YearRange years) {
    group.validate();
    std::vector<float> tv = theme_vector(model, theme);
    std::span<const float> tv_span(tv);

    auto base = group_year_mean(model, docs, group, tv_span, base_year);
    if (!base)
        throw std::invalid_argument("topic_index: no group member has a document in base year " +
                                    std::to_string(base_year));
    if (std::abs(base->mean) < 1e-12)
        throw std::runtime_error("topic_index: degenerate base year " +
                                 std::to_string(base_year));

    IndexSeries series;
    series.name = theme.name;
    series.base_year = base_year;
    for (int y = years.first; y <= years.last; ++y) {
        auto m = group_year_mean(model, docs, group, tv_span, y);
        if (!m) continue;
        series.points[y] = relative_deviation(m->mean, base->mean);
        series.effective_n[y] = m->n;
    }
    return series;
}

} // namespace semindex
} // namespace semdex
