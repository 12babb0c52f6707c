#include <doctest.h>

#include <cmath>
#include <random>

#include "acosim/radio.hpp"

using namespace acosim;

TEST_CASE("rs sinr reference points") {
    LinkBudget clean;  // unity gains, no pathloss
    clean.noise_dbm = -100.0;

    // Numerator 10x the noise floor, no interference.
    double p10 = mw_to_dbm(10.0 * dbm_to_mw(-100.0));
    CHECK(rs_sinr(clean, p10, {}) == doctest::Approx(10.0));

    // Signal equals noise.
    CHECK(rs_sinr(clean, -100.0, {}) == doctest::Approx(1.0));

    // One interferer with identical link terms and negligible noise: ~0 dB.
    LinkBudget strong = clean;
    strong.noise_dbm = -200.0;
    double sinr = rs_sinr(strong, -50.0, {{strong, -50.0}});
    CHECK(linear_to_db(sinr) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("sinr monotonicity in interference and power") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> pl(60.0, 140.0), p(-10.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        LinkBudget serving;
        serving.pathloss_db = pl(rng);
        serving.noise_dbm = -116.0;
        double prs = p(rng);
        std::vector<std::pair<LinkBudget, double>> interf;
        double base = rs_sinr(serving, prs, interf);
        LinkBudget il;
        il.pathloss_db = pl(rng);
        interf.push_back({il, p(rng)});
        CHECK(rs_sinr(serving, prs, interf) < base);
        CHECK(rs_sinr(serving, prs + 1.0, interf) >
              rs_sinr(serving, prs, interf));
    }
}

TEST_CASE("timing advance quantization") {
    CHECK(measure_ta(0.0).ta == 0);
    CHECK(measure_ta(0.0).range_m == 0.0);
    CHECK(measure_ta(781.25).ta == 10);
    CHECK(measure_ta(781.25).range_m == doctest::Approx(781.25));
    CHECK(measure_ta(100.0).ta == 1);
    CHECK(measure_ta(100.0).range_m == doctest::Approx(78.125));
    CHECK_THROWS_AS(measure_ta(-1.0), std::domain_error);
}

TEST_CASE("ta error never exceeds half a sample") {
    for (double d = 0.0; d <= 15000.0; d += 0.37) {
        auto m = measure_ta(d);
        CHECK(std::abs(m.range_m - d) <= kTaSampleMeters / 2.0 + 1e-9);
    }
}

TEST_CASE("rsrp additive chain and outage floor") {
    LinkBudget l;
    l.pathloss_db = 95.0;
    CHECK(rsrp(15.0, l) == doctest::Approx(-80.0));

    l.h_linear = 0.0;
    CHECK(rsrp(15.0, l) == kDeepOutageDbm);

    // Doubling distance under the 3.76 exponent drops RSRP by ~11.3 dB.
    PathlossModel pl;
    LinkBudget a, b;
    a.pathloss_db = pl(500.0);
    b.pathloss_db = pl(1000.0);
    CHECK(rsrp(15.0, a) - rsrp(15.0, b) ==
          doctest::Approx(10.0 * 3.76 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("pathloss stays above free space") {
    PathlossModel pl;
    auto fspl = [](double m) {
        // 2 GHz free-space loss.
        return 32.45 + 20.0 * std::log10(m / 1000.0) + 20.0 * std::log10(2000.0);
    };
    for (double d = 1.0; d < 20000.0; d *= 1.3) CHECK(pl(d) >= fspl(d) - 1e-9);
}

TEST_CASE("pci reuse decides the interferer list") {
    CHECK(pci_interferes(3, 6, 3));
    CHECK(pci_interferes(4, 7, 3));
    CHECK_FALSE(pci_interferes(3, 7, 3));
    CHECK(pci_interferes(1, 2, 1));  // reuse 1: everyone collides
}

TEST_CASE("antenna pattern shape") {
    AntennaPattern p;
    p.g_max_dbi = 14.0;
    p.tilt_deg = 8.0;
    CHECK(p.gain_dbi(0.0, 8.0) == doctest::Approx(14.0));  // boresight, at tilt
    CHECK(p.vertical_attenuation_db(8.0 + 6.5) == doctest::Approx(12.0));
    CHECK(p.vertical_attenuation_db(90.0) == doctest::Approx(p.sla_v_db));
    CHECK(p.horizontal_attenuation_db(180.0) == doctest::Approx(p.backlobe_db));
    // Total attenuation is floored by the backlobe level.
    CHECK(p.gain_dbi(180.0, 90.0) == doctest::Approx(14.0 - p.backlobe_db));
    // Symmetric horizontally.
    CHECK(p.gain_dbi(30.0, 8.0) == doctest::Approx(p.gain_dbi(-30.0, 8.0)));
}

TEST_CASE("spatial channel collapses to the amplitude when phases vanish") {
    ChannelParams p;
    p.p_n = 4.0;
    p.sigma_sf = 0.25;
    p.sub.push_back(SubPath{});  // all angles and phases zero, unit gains
    p.wavenumber = 2.0 * kPi / 0.15;
    p.tx_spacing_m = 0.075;
    p.rx_spacing_m = 0.075;
    auto h = spatial_channel(p, 0.5, 1, 2);
    CHECK(h.real() == doctest::Approx(std::sqrt(4.0 * 0.25)));
    CHECK(h.imag() == doctest::Approx(0.0));
}

TEST_CASE("spatial channel obeys the triangle bound") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ang(-90.0, 90.0), ph(0.0, 2.0 * kPi),
        g(0.1, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        ChannelParams p;
        p.p_n = g(rng);
        p.sigma_sf = g(rng);
        p.wavenumber = 2.0 * kPi / 0.15;
        p.tx_spacing_m = 0.075;
        p.rx_spacing_m = 0.0375;
        p.speed_mps = 10.0;
        p.travel_deg = ang(rng);
        int m = 1 + static_cast<int>(rng() % 20);
        double bound = 0.0;
        for (int i = 0; i < m; ++i) {
            SubPath sp;
            sp.aod_deg = ang(rng);
            sp.aoa_deg = ang(rng);
            sp.phase_rad = ph(rng);
            sp.g_bs = g(rng);
            sp.g_ms = g(rng);
            bound += std::sqrt(sp.g_bs * sp.g_ms);
            p.sub.push_back(sp);
        }
        bound *= std::sqrt(p.p_n * p.sigma_sf / m);
        auto h = spatial_channel(p, 0.123, 1, 3);
        CHECK(std::abs(h) <= bound + 1e-12);
    }
}

TEST_CASE("spatial channel is time invariant when the user is static") {
    ChannelParams p;
    p.wavenumber = 2.0 * kPi / 0.15;
    p.tx_spacing_m = 0.075;
    p.rx_spacing_m = 0.075;
    p.speed_mps = 0.0;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ang(-90.0, 90.0), ph(0.0, 2.0 * kPi);
    for (int i = 0; i < 8; ++i)
        p.sub.push_back(SubPath{ang(rng), ang(rng), ph(rng), 1.0, 1.0});
    auto h1 = spatial_channel(p, 0.0, 0, 1);
    auto h2 = spatial_channel(p, 42.0, 0, 1);
    CHECK(h1 == h2);

    p.speed_mps = 3.0;
    CHECK(spatial_channel(p, 0.0, 0, 1) != spatial_channel(p, 42.0, 0, 1));
}

TEST_CASE("spatial channel mean power matches the analytic value") {
    // Monte-Carlo over random phases: E|h|^2 = p_n * sigma_sf * mean(g_bs*g_ms).
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    const int m_sub = 20;
    const int draws = 10000;
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
        ChannelParams p;
        p.p_n = 2.0;
        p.sigma_sf = 0.5;
        p.wavenumber = 2.0 * kPi / 0.15;
        p.tx_spacing_m = 0.075;
        p.rx_spacing_m = 0.075;
        for (int i = 0; i < m_sub; ++i) {
            SubPath sp;
            sp.aod_deg = 360.0 * (i / static_cast<double>(m_sub)) - 180.0;
            sp.aoa_deg = sp.aod_deg;
            sp.phase_rad = ph(rng);
            p.sub.push_back(sp);
        }
        acc += std::norm(spatial_channel(p, 0.0, 0, 0));
    }
    double mean_power = acc / draws;
    CHECK(mean_power == doctest::Approx(2.0 * 0.5).epsilon(0.05));
}

TEST_CASE("rs config validation") {
    RsConfig ok;
    CHECK_NOTHROW(ok.validate());
    RsConfig bad = ok;
    bad.p_rs_dbm = 99.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
