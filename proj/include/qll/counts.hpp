#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace qll {

/// Empirical outcome distribution: bitstring -> count, plus the shot total.
/// Bit 0 of an outcome is the rightmost character.
struct CountsDistribution {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    int num_bits = 0;

    void add(const std::string& outcome, std::uint64_t n = 1);

    std::uint64_t count_of(const std::string& outcome) const;

    nlohmann::json to_json() const;
    static CountsDistribution from_json(const nlohmann::json& j);
};

/// Outcome index -> bitstring of the given width (bit 0 rightmost).
std::string outcome_to_bitstring(std::uint64_t outcome, int num_bits);

} // namespace qll
