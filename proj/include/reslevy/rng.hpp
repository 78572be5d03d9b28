#pragma once

#include <cstdint>
#include <random>

namespace reslevy {

using Rng = std::mt19937_64;

// Finalizer of the splitmix64 generator. Used to decorrelate engine seeds
// derived from nearby (master_seed, stream_index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Substream rule: replica i draws from an engine seeded with
// splitmix64(master ^ splitmix64(i+1)). Replica identity is the index, never
// the worker that happens to run it, so parallel reductions are reproducible
// for any worker count.
inline Rng substream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return Rng(splitmix64(master_seed ^ splitmix64(stream_index + 1)));
}

}  // namespace reslevy
