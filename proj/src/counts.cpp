#include "qll/counts.hpp"

#include "qll/errors.hpp"

namespace qll {

void CountsDistribution::add(const std::string& outcome, std::uint64_t n)
{
    counts[outcome] += n;
    shots += n;
}

std::uint64_t CountsDistribution::count_of(const std::string& outcome) const
{
    auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
}

nlohmann::json CountsDistribution::to_json() const
{
    nlohmann::json j;
    j["shots"] = shots;
    j["counts"] = nlohmann::json::object();
    for (const auto& [outcome, count] : counts) {
        j["counts"][outcome] = count;
    }
    return j;
}

CountsDistribution CountsDistribution::from_json(const nlohmann::json& j)
{
    CountsDistribution dist;
    dist.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& [outcome, count] : j.at("counts").items()) {
        dist.counts[outcome] = count.get<std::uint64_t>();
        dist.num_bits = static_cast<int>(outcome.size());
    }
    std::uint64_t total = 0;
    for (const auto& [outcome, count] : dist.counts) {
        if (static_cast<int>(outcome.size()) != dist.num_bits) {
            throw WidthMismatchError("outcome bitstrings have mixed widths");
        }
        total += count;
    }
    if (total != dist.shots) {
        throw Error("counts do not sum to the recorded shot total");
    }
    return dist;
}

std::string outcome_to_bitstring(std::uint64_t outcome, int num_bits)
{
    std::string s(static_cast<std::size_t>(num_bits), '0');
    for (int i = 0; i < num_bits; ++i) {
        if ((outcome >> i) & 1ULL) {
            s[static_cast<std::size_t>(num_bits - 1 - i)] = '1';
        }
    }
    return s;
}

} // namespace qll
