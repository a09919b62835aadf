#include "semdex/docindex.hpp"

#include "semdex/errors.hpp"
#include "semdex/log.hpp"

#include <cctype>

namespace semdex {

std::optional<std::pair<std::string, int>> parse_doc_label(const std::string& label) {
    auto sep = label.rfind('_');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= label.size())
        return std::nullopt;
    std::string year_part = label.substr(sep + 1);
    for (char c : year_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    try {
        return std::make_pair(label.substr(0, sep), std::stoi(year_part));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

DocIndex::DocIndex(const corpus::Vocabulary& vocab, const AliasTable& aliases) {
    const auto& labels = vocab.doc_labels();
    for (std::size_t row = 0; row < labels.size(); ++row) {
        auto parsed = parse_doc_label(labels[row]);
        if (!parsed) {
            log::warn("document label not in <ISO3>_<year> form, skipped: " + labels[row]);
            continue;
        }
        std::string country = aliases.resolve(parsed->first);
        auto [it, inserted] = by_year_[parsed->second].emplace(country, row);
        if (!inserted)
            throw InputError("two documents map to " + country + " in " +
                             std::to_string(parsed->second) + " (check the alias table)");
    }
}

const std::map<std::string, std::size_t>* DocIndex::year(int y) const {
    auto it = by_year_.find(y);
    return it == by_year_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> DocIndex::find(const std::string& country, int year) const {
    auto* nodes = this->year(year);
    if (!nodes) return std::nullopt;
    auto it = nodes->find(country);
    return it == nodes->end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

std::optional<std::pair<int, int>> DocIndex::year_range() const {
    if (by_year_.empty()) return std::nullopt;
    return std::make_pair(by_year_.begin()->first, by_year_.rbegin()->first);
}

} // namespace semdex
