#include "qll/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace qll {

namespace {

// splitmix64; period-free hash-style generator with good diffusion.
std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t hash_label(std::string_view label)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label)
{
    return mix(seed ^ hash_label(label));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index)
{
    return mix(mix(seed ^ hash_label(label)) + index);
}

RngStream RngStream::derive(std::string_view label) const
{
    return RngStream(derive_seed(state_, label));
}

RngStream RngStream::derive(std::string_view label, std::uint64_t index) const
{
    return RngStream(derive_seed(state_, label, index));
}

std::uint64_t RngStream::next_u64()
{
    state_ = mix(state_);
    return state_;
}

double RngStream::next_unit()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound)
{
    if (bound == 0) {
        throw std::invalid_argument("next_below: bound must be positive");
    }
    // rejection sampling keeps the draw exactly uniform
    const std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t v = next_u64();
    while (v >= limit) {
        v = next_u64();
    }
    return v % bound;
}

int RngStream::uniform_int(int lo, int hi)
{
    if (lo > hi) {
        throw std::invalid_argument("uniform_int: empty range");
    }
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<int> RngStream::sample_distinct(int n, int k)
{
    if (k > n) {
        throw std::invalid_argument("sample_distinct: k exceeds n");
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) {
        pool[i] = i;
    }
    // partial Fisher-Yates
    for (int i = 0; i < k; ++i) {
        int j = uniform_int(i, n - 1);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qll
