#include "semdex/votes.hpp"

#include "semdex/errors.hpp"
#include "semdex/log.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace semdex::votes {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(pos)));
            break;
        }
        fields.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        // 1-based ranks i+1..j+1 share the average
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::vector<VotingRecord> load_votes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open votes file: " + path.string());

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw InputError(path.string() + ": empty file (expected header)");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        auto header = split_csv_line(line);
        if (header.size() != 3 || header[0] != "year" || header[1] != "country_code" ||
            header[2] != "agreement")
            throw InputError(path.string() + ": expected header year,country_code,agreement");
    }

    std::vector<VotingRecord> records;
    std::set<std::pair<int, std::string>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        auto fail = [&](const std::string& why) -> InputError {
            return InputError(path.string() + ":" + std::to_string(lineno) + ": " + why);
        };
        if (fields.size() != 3) throw fail("expected 3 fields");
        VotingRecord rec;
        try {
            std::size_t used = 0;
            rec.year = std::stoi(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw fail("unparseable year '" + fields[0] + "'");
        }
        rec.country_code = fields[1];
        if (rec.country_code.empty()) throw fail("empty country code");
        try {
            std::size_t used = 0;
            rec.agreement = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw fail("unparseable agreement '" + fields[2] + "'");
        }
        if (!(rec.agreement >= 0.0 && rec.agreement <= 1.0))
            throw fail("agreement " + fields[2] + " outside [0, 1]");
        if (!seen.insert({rec.year, rec.country_code}).second)
            throw fail("duplicate record for " + rec.country_code + " in " + fields[0]);
        records.push_back(std::move(rec));
    }
    return records;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("spearman: need at least 3 pairs");

    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0; // ranks always average to (n+1)/2

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double dx = rx[i] - mean;
        double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    double rho = sxy / std::sqrt(sxx * syy);
    return std::clamp(rho, -1.0, 1.0);
}

std::vector<CorrelationPoint> yearly_correlation(const embed::EmbeddingModel& model,
                                                 const DocIndex& docs,
                                                 std::span<const VotingRecord> votes,
                                                 const std::string& reference_country,
                                                 semindex::YearRange years,
                                                 const AliasTable& aliases) {
    const std::string reference = aliases.resolve(reference_country);

    // (year, canonical country) -> agreement
    std::map<int, std::map<std::string, double>> agreement;
    for (const auto& rec : votes) {
        std::string country = aliases.resolve(rec.country_code);
        auto [it, inserted] = agreement[rec.year].emplace(country, rec.agreement);
        if (!inserted)
            throw InputError("voting records for " + rec.country_code + " in " +
                             std::to_string(rec.year) +
                             " collide after alias resolution");
    }

    std::vector<CorrelationPoint> points;
    for (int year = years.first; year <= years.last; ++year) {
        auto ref_row = docs.find(reference, year);
        if (!ref_row) {
            log::warn("correlation: no " + reference + " document in " +
                      std::to_string(year) + ", year skipped");
            continue;
        }
        const auto* present = docs.year(year);
        auto year_votes = agreement.find(year);
        std::vector<double> x, y;
        if (year_votes != agreement.end()) {
            for (const auto& [country, row] : *present) {
                if (country == reference) continue;
                auto vote = year_votes->second.find(country);
                if (vote == year_votes->second.end()) continue;
                x.push_back(semindex::cosine<float>(model.doc_in.row(row),
                                                    model.doc_in.row(*ref_row)));
                y.push_back(vote->second);
            }
        }
        if (x.size() < 3) {
            log::warn("correlation: only " + std::to_string(x.size()) + " pairs in " +
                      std::to_string(year) + ", year skipped");
            continue;
        }
        auto rho = spearman(x, y);
        if (!rho) {
            log::warn("correlation: zero rank variance in " + std::to_string(year) +
                      ", year skipped");
            continue;
        }
        points.push_back(CorrelationPoint{year, *rho, static_cast<int>(x.size())});
    }
    return points;
}

} // namespace semdex::votes
