#pragma once

#include "semdex/docindex.hpp"
#include "semdex/model.hpp"
#include "semdex/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace semdex::semindex {

/// Cosine similarity (a . b) / (||a|| ||b||). Exactly symmetric; throws
/// std::invalid_argument on a zero-norm input.
template <class Real>
double cosine(std::span<const Real> a, std::span<const Real> b);

extern template double cosine<float>(std::span<const float>, std::span<const float>);
extern template double cosine<double>(std::span<const double>, std::span<const double>);

struct PolicyTheme {
    std::string name;
    std::vector<std::string> keywords; // stems; surface forms are stemmed on load
};

/// Arithmetic mean of the keywords' input vectors. Throws
/// std::invalid_argument listing any keyword missing from the vocabulary.
std::vector<float> theme_vector(const embed::EmbeddingModel& model,
                                const PolicyTheme& theme);

struct YearRange {
    int first = 0;
    int last = 0; // inclusive
};

/// Topic-related semantic index: per year, the relative deviation of the
/// group's mean cosine-to-theme from the base year's mean. Group members
/// with no document in a year are dropped from that year's mean;
/// effective_n records the count used. Years with no members present are
/// omitted. Throws when the base-year mean is degenerate (|mean| < 1e-12).
IndexSeries topic_index(const embed::EmbeddingModel& model, const DocIndex& docs,
                        const CountryGroup& group, const PolicyTheme& theme,
                        int base_year, YearRange years);

} // namespace semdex::semindex
