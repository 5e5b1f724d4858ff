#pragma once

// Deterministic seeding helpers.  Parallel loops derive one substream per
// replicate from (master seed, stream index), so sequential and parallel
// runs see identical draws.

#include <cstdint>
#include <random>

namespace ratiolab::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ (stream * 0x9e3779b97f4a7c15ull)) + index);
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream,
                                   std::uint64_t index = 0) {
    return std::mt19937_64(substream_seed(master, stream, index));
}

}  // namespace ratiolab::rng
