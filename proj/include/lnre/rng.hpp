#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace lnre {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based child seed: depends only on (master, a, b), never on call order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

inline std::uint64_t seed_key(double x) { return std::bit_cast<std::uint64_t>(x); }

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return std::mt19937_64(derive_seed(master, a, b));
}

} // namespace lnre
