#pragma once

#include <cstdint>
#include <vector>

namespace acosim {

// Length-31 Gold sequence generator (dual 31-bit m-sequences, advanced by
// Nc = 1600 before output, x1 fixed-seeded and x2 seeded with c_init).
class GoldSequence {
public:
    static constexpr int kAdvance = 1600;

    explicit GoldSequence(std::uint32_t c_init);

    // Next output bit c(n).
    std::uint8_t next();

    std::vector<std::uint8_t> take(std::size_t n);

private:
    void step();

    std::uint32_t x1_;
    std::uint32_t x2_;
};

}  // namespace acosim
