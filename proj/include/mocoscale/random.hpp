#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mocoscale {

/// std::mt19937_64 with hand-rolled distributions, so a seed gives the same
/// draws under any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Uniform integer in the closed range [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Order-sensitive combination of two words into a derived seed.
constexpr std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t value) {
    return mix64(seed ^ mix64(value + 0x632BE59BD9B4E019ULL));
}

/// FNV-1a over the bytes of a string, for mixing names into seeds.
constexpr std::uint64_t hash_name(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace mocoscale
