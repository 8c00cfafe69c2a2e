#pragma once
#include <cstdint>

namespace stackstop {

// SplitMix64 (Steele, Lea & Flood 2014). The whole generator is the five
// integer operations below, so every stream is bit-identical across
// platforms and compilers. All randomness in this project flows through it.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound), bound >= 1. Lemire's multiply-shift
    // with rejection of the biased low range.
    std::uint64_t next_below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ull; }
    std::uint64_t operator()() { return next(); }

private:
    std::uint64_t state_;
};

// The i-th output of SplitMix64 started at `seed`, computed without
// advancing through the first i-1 outputs. Monte Carlo trial i runs on
// SplitMix64(derive_seed(seed, i)), which makes the merged result of a
// sharded run independent of how trials are split across threads.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace stackstop
