#pragma once

#include "semdex/corpus.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace semdex {

/// Maps raw country codes onto analytic entities, e.g. SUN -> RUS so the
/// USSR and the Russian Federation form one continuous series.
struct AliasTable {
    std::map<std::string, std::string> to_canonical;

    std::string resolve(const std::string& code) const {
        auto it = to_canonical.find(code);
        return it == to_canonical.end() ? code : it->second;
    }
};

/// Lookup from (canonical country, year) to document row, built from the
/// vocabulary's "<ISO3>_<year>" labels.
class DocIndex {
public:
    DocIndex() = default;
    DocIndex(const corpus::Vocabulary& vocab, const AliasTable& aliases);

    /// Countries (canonical) with a document in the given year, with their
    /// document rows; nullptr if the year is absent.
    const std::map<std::string, std::size_t>* year(int y) const;
    std::optional<std::size_t> find(const std::string& country, int year) const;
    /// Inclusive [min, max] over years present; nullopt when empty.
    std::optional<std::pair<int, int>> year_range() const;
    const std::map<int, std::map<std::string, std::size_t>>& by_year() const {
        return by_year_;
    }

private:
    std::map<int, std::map<std::string, std::size_t>> by_year_;
};

/// Splits "<ISO3>_<year>"; nullopt if the label has another shape.
std::optional<std::pair<std::string, int>> parse_doc_label(const std::string& label);

} // namespace semdex
