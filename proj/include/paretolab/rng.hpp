#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace paretolab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a over the bytes of a tag string.
constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of the substream for (master seed, trial index, purpose tag).
///
/// The hash is fixed: mix64(mix64(mix64(master) ^ trial) ^ fnv1a(tag)).
/// Parallel trials draw from disjoint substreams keyed this way, so results
/// never depend on scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t trial,
                                       std::string_view tag) noexcept {
    return mix64(mix64(mix64(master) ^ trial) ^ hash_tag(tag));
}

/// 64-bit Mersenne Twister plus a portable [0,1) conversion.
///
/// std::mt19937_64's output sequence is fixed by the standard; the standard
/// distributions are not, so uniforms are built from the top 53 bits here.
class Rng {
public:
    using result_type = std::mt19937_64::result_type;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace paretolab
