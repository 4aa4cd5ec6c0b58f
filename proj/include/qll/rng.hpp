#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace qll {

/// Splittable deterministic RNG. Every consumer of randomness in the toolkit
/// derives a labelled child stream from one root seed, so adding a draw in
/// one place never shifts the draws of another.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    /// Independent child stream; does not advance this stream.
    RngStream derive(std::string_view label) const;
    RngStream derive(std::string_view label, std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 bits of entropy.
    double next_unit();

    /// Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    bool fair_bit() { return (next_u64() >> 63) != 0; }

    /// k distinct values from [0, n), ascending.
    std::vector<int> sample_distinct(int n, int k);

private:
    std::uint64_t state_;
};

/// FNV-1a, used for stable stream labels.
std::uint64_t hash_label(std::string_view label);

/// Labelled child seeds for APIs that take a plain seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index);

} // namespace qll
