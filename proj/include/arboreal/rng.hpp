#pragma once

#include <cstdint>
#include <random>

namespace arboreal {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Unbiased draw from {0, ..., n-1}.  Hand-rolled rejection instead of
// std::uniform_int_distribution so results are identical across standard
// library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ull) / n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace arboreal
