#include "acosim/gold.hpp"

namespace acosim {

GoldSequence::GoldSequence(std::uint32_t c_init) {
    x1_ = 1u;                       // x1(0) = 1, x1(1..30) = 0
    x2_ = c_init & 0x7fffffffu;     // x2(i) = bit i of c_init
    for (int i = 0; i < kAdvance; ++i) step();
}

void GoldSequence::step() {
    // x1(n+31) = x1(n+3) xor x1(n); x2(n+31) = x2(n+3)^x2(n+2)^x2(n+1)^x2(n).
    // Bit 0 of the register holds the current sequence value.
    std::uint32_t n1 = ((x1_ >> 3) ^ x1_) & 1u;
    std::uint32_t n2 = ((x2_ >> 3) ^ (x2_ >> 2) ^ (x2_ >> 1) ^ x2_) & 1u;
    x1_ = (x1_ >> 1) | (n1 << 30);
    x2_ = (x2_ >> 1) | (n2 << 30);
}

std::uint8_t GoldSequence::next() {
    std::uint8_t bit = static_cast<std::uint8_t>((x1_ ^ x2_) & 1u);
    step();
    return bit;
}

std::vector<std::uint8_t> GoldSequence::take(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = next();
    return out;
}

}  // namespace acosim
