#pragma once

#include "semdex/docindex.hpp"
#include "semdex/model.hpp"
#include "semdex/semindex.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semdex::votes {

/// Fraction of a country's votes that matched the reference country's
/// votes in one year.
struct VotingRecord {
    int year = 0;
    std::string country_code;
    double agreement = 0.0; // in [0, 1]
};

struct CorrelationPoint {
    int year = 0;
    double rho = 0.0;
    int n = 0; // paired-sample count, >= 3
};

/// Reads "year,country_code,agreement" CSV. Rows with out-of-range
/// agreement or unparseable years fail with their line number; duplicate
/// (year, country) pairs are an error.
std::vector<VotingRecord> load_votes(const std::filesystem::path& path);

/// Spearman's rank correlation: Pearson correlation of average-ranked
/// values (ties get their average rank). Returns nullopt when either
/// input has zero rank variance. Throws on length mismatch or n < 3.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

/// Per year, pairs countries that have both a document vector and a
/// voting record: x = cosine to the reference country's document,
/// y = agreement. Years with fewer than 3 pairs (or no reference
/// document) are skipped with a warning. The reference country is never
/// paired with itself.
std::vector<CorrelationPoint> yearly_correlation(const embed::EmbeddingModel& model,
                                                 const DocIndex& docs,
                                                 std::span<const VotingRecord> votes,
                                                 const std::string& reference_country,
                                                 semindex::YearRange years,
                                                 const AliasTable& aliases);

} // namespace semdex::votes
