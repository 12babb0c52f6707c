#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "acosim/gold.hpp"
#include "acosim/radio.hpp"

using namespace acosim;

namespace {

// Independent reference: the dual length-31 recurrences evaluated naively on
// bit vectors, nothing shared with the production generator.
std::vector<std::uint8_t> reference_gold(std::uint32_t c_init, std::size_t n) {
    const std::size_t nc = 1600;
    std::vector<std::uint8_t> x1(n + nc + 31, 0), x2(n + nc + 31, 0);
    x1[0] = 1;
    for (int i = 0; i < 31; ++i) x2[static_cast<std::size_t>(i)] = (c_init >> i) & 1u;
    for (std::size_t i = 0; i + 31 < x1.size(); ++i) {
        x1[i + 31] = static_cast<std::uint8_t>((x1[i + 3] + x1[i]) % 2);
        x2[i + 31] = static_cast<std::uint8_t>(
            (x2[i + 3] + x2[i + 2] + x2[i + 1] + x2[i]) % 2);
    }
    std::vector<std::uint8_t> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = static_cast<std::uint8_t>((x1[i + nc] + x2[i + nc]) % 2);
    return c;
}

}  // namespace

TEST_CASE("gold sequence matches the independent recurrence") {
    for (std::uint32_t init : {1u, 2u, 7u, 12345u, 0x7fffffffu, 501u}) {
        GoldSequence g(init);
        auto got = g.take(256);
        auto want = reference_gold(init, 256);
        CHECK(got == want);
    }
}

TEST_CASE("gold sequences differ across seeds") {
    auto a = GoldSequence(1).take(128);
    auto b = GoldSequence(2).take(128);
    CHECK(a != b);
}

TEST_CASE("rs waveform maps bit pairs onto the QPSK constellation") {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::uint8_t> bits{0, 0, 1, 1, 0, 1, 1, 0};
    auto sym = rs_waveform(bits, 4);
    CHECK(sym[0] == std::complex<double>(s, s));     // c=00 -> (1+j)/sqrt2
    CHECK(sym[1] == std::complex<double>(-s, -s));   // c=11 -> (-1-j)/sqrt2
    CHECK(sym[2] == std::complex<double>(s, -s));
    CHECK(sym[3] == std::complex<double>(-s, s));
}

TEST_CASE("rs waveform rejects short bit streams") {
    std::vector<std::uint8_t> bits{0, 1, 0};
    CHECK_THROWS_AS(rs_waveform(bits, 2), std::invalid_argument);
}

TEST_CASE("seeded waveform is unit modulus and hits all four points") {
    GoldSequence g(7);
    auto bits = g.take(2000);
    auto sym = rs_waveform(bits, 1000);
    std::set<std::pair<int, int>> quadrants;
    for (const auto& x : sym) {
        CHECK(std::abs(x) == doctest::Approx(1.0).epsilon(1e-15));
        quadrants.insert({x.real() > 0 ? 1 : -1, x.imag() > 0 ? 1 : -1});
    }
    CHECK(quadrants.size() == 4);
}

TEST_CASE("first symbols match the reference generator bit for bit") {
    GoldSequence g(501);
    auto sym = rs_waveform(g.take(128), 64);
    auto ref_bits = reference_gold(501, 128);
    auto ref_sym = rs_waveform(ref_bits, 64);
    for (std::size_t i = 0; i < 64; ++i) CHECK(sym[i] == ref_sym[i]);
}
