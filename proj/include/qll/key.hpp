#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qll {

/// Fixed-length bit vector. Bit 0 is the leftmost character of the string
/// form, matching the left-to-right reading of a written key.
struct Key {
    std::vector<std::uint8_t> bits;

    int length() const { return static_cast<int>(bits.size()); }
    int ones() const;
    int zeros() const { return length() - ones(); }

    std::string to_string() const;
    static Key from_string(const std::string& text);

    bool operator==(const Key& other) const { return bits == other.bits; }

    nlohmann::json to_json() const;
    static Key from_json(const nlohmann::json& j);
};

/// n independent fair coin flips from the seeded RNG. Throws
/// ZeroLengthKeyError for n = 0.
Key gen_key(int n, std::uint64_t seed);

} // namespace qll
