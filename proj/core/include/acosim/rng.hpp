#pragma once

#include <cstdint>
#include <random>

namespace acosim {

// Deterministic substream derivation. Every random draw in the simulator is
// seeded from (master seed, purpose, entity ids) so results do not depend on
// evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
    UeDrop = 1,
    Shadow = 2,
    UlNoise = 3,
    UlPhase = 4,
    Traffic = 5,
    Test = 6,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(master ^ 0xa0c0e0f0d0b09070ULL);
    s = splitmix64(s ^ static_cast<std::uint64_t>(purpose));
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return s;
}

inline std::mt19937_64 make_stream(std::uint64_t master, Stream purpose,
                                   std::uint64_t a = 0, std::uint64_t b = 0) {
    return std::mt19937_64(derive_seed(master, purpose, a, b));
}

}  // namespace acosim
