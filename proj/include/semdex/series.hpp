#pragma once

#include <map>
#include <string>
#include <vector>

namespace semdex {

/// Year -> value series anchored at a base year (value 0 there); years
/// with no usable data are simply absent from points. effective_n records
/// how many member country-years actually entered each year's value.
struct IndexSeries {
    std::string name;
    int base_year = 0;
    std::map<int, double> points;
    std::map<int, int> effective_n;
};

struct CountryGroup {
    std::string name;
    std::vector<std::string> members; // ISO-3 codes, canonical

    /// Throws std::invalid_argument when empty or containing duplicates.
    void validate() const;
};

/// Relative deviation from a base value: (value - base) / |base|.
inline double relative_deviation(double value, double base) {
    return (value - base) / (base < 0 ? -base : base);
}

} // namespace semdex
