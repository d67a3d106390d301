#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

// Every random choice in the library flows from one 64-bit seed through named
// substreams, so parallel schedules and re-runs cannot perturb results.

namespace qcsp {

// FNV-1a over the stream name, then splitmix64 to decorrelate nearby seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view stream,
                              std::uint64_t index = 0) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::uint64_t z = seed ^ h ^ (index * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::string_view stream,
                                 std::uint64_t index = 0) {
    return std::mt19937_64(mix_seed(seed, stream, index));
}

// Distribution helpers built only on the (fully specified) raw generator
// output, keeping draws identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

// Marsaglia polar method over uniform01.
inline double gaussian(std::mt19937_64& rng) {
    for (;;) {
        double u = 2.0 * uniform01(rng) - 1.0;
        double v = 2.0 * uniform01(rng) - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

}  // namespace qcsp
