#pragma once

#include <cstdint>
#include <random>

namespace sai {

// splitmix64; used to derive independent stream seeds from a master seed.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    return mix64(master ^ mix64(stream + 1));
}

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
    // (0,1) exclusive at both ends.
    return (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
}

}  // namespace sai
