#ifndef BNSL_RNG_HPP
#define BNSL_RNG_HPP

#include <cstdint>
#include <random>

namespace bnsl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for stream `stream` of a run seeded with `base`. Restarts,
/// population members and benchmark cells each get their own stream so
/// results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x7f4a7c15ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace bnsl

#endif  // BNSL_RNG_HPP
