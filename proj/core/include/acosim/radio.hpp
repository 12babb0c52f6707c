#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "acosim/common.hpp"

namespace acosim {

// Reference-signal power settings for one cell.
struct RsConfig {
    double p_rs_dbm{15.0};
    double p_rs_min_dbm{0.0};
    double p_rs_max_dbm{18.0};
    int pci{0};
    int reuse_n{3};

    void validate() const;  // throws std::invalid_argument
};

// Cells interfere on the RS only when their PCI share the same modulo class.
inline bool pci_interferes(int pci_a, int pci_b, int reuse_n) {
    if (reuse_n <= 0) return true;
    return (pci_a % reuse_n) == (pci_b % reuse_n);
}

// QPSK RS symbols from a pseudo-random bit stream:
// symbol m = (1/sqrt(2)) * [(1 - 2 c(2m)) + j (1 - 2 c(2m+1))].
// Throws std::invalid_argument when fewer than 2*count bits are supplied.
std::vector<std::complex<double>> rs_waveform(std::span<const std::uint8_t> bits,
                                              std::size_t count);

// Log-distance macro pathloss with a minimum-distance clamp.
struct PathlossModel {
    double const_db{128.1};
    double slope_db_decade{37.6};
    double min_dist_m{35.0};

    double operator()(double dist_m) const {
        double d = dist_m < min_dist_m ? min_dist_m : dist_m;
        return const_db + slope_db_decade * std::log10(d / 1000.0);
    }
};

// Parabolic sector pattern: vertical lobe around the downtilt, horizontal lobe
// around the boresight, total attenuation floored by the backlobe level.
struct AntennaPattern {
    double g_max_dbi{14.0};
    double tilt_deg{0.0};        // downtilt, positive below horizon
    double theta_3db_deg{6.5};   // vertical half-power beamwidth
    double phi_3db_deg{70.0};    // horizontal half-power beamwidth
    double sla_v_db{20.0};       // vertical sidelobe floor
    double backlobe_db{25.0};    // overall front-to-back floor
    double extra_gain_db{0.0};   // optional empirical correction

    double vertical_attenuation_db(double elev_deg) const;
    double horizontal_attenuation_db(double az_off_deg) const;
    // az_off relative to boresight, elev positive below horizon.
    double gain_dbi(double az_off_deg, double elev_deg) const;
};

// One directed link, everything needed to score RSRP and SINR.
struct LinkBudget {
    double distance_m{0.0};
    double pathloss_db{0.0};
    double g_bs_dbi{0.0};
    double g_ms_dbi{0.0};
    double h_linear{1.0};   // realized channel power gain (shadowing etc.)
    double noise_dbm{-116.0};
};

// RSRP in dBm; a non-positive channel gain collapses to the deep-outage floor.
double rsrp(double p_rs_dbm, const LinkBudget& link);
inline constexpr double kDeepOutageDbm = -200.0;

// Linear RS SINR: P_rs*H*G / (noise + sum of interferer powers).
double rs_sinr(const LinkBudget& serving, double p_rs_dbm,
               const std::vector<std::pair<LinkBudget, double>>& interferers);

// Timing-advance quantization: one TA sample spans 16 Ts * c / 2 = 78.125 m.
inline constexpr double kTaSampleMeters = 78.125;

struct TaMeasurement {
    int ta{0};
    double range_m{0.0};
};

TaMeasurement measure_ta(double distance_m);  // throws std::domain_error if negative

// One sub-path of the spatial channel.
struct SubPath {
    double aod_deg{0.0};
    double aoa_deg{0.0};
    double phase_rad{0.0};
    double g_bs{1.0};  // linear power gains at the path angles
    double g_ms{1.0};
};

struct ChannelParams {
    double p_n{1.0};       // path power
    double sigma_sf{1.0};  // realized shadow gain, linear
    std::vector<SubPath> sub;
    double speed_mps{0.0};
    double travel_deg{0.0};      // UE travel direction
    double wavenumber{0.0};      // k = 2*pi/lambda
    double tx_spacing_m{0.0};    // element pitch at the BS
    double rx_spacing_m{0.0};    // element pitch at the UE
};

// Spatial channel coefficient between tx element s and rx element u at time t.
std::complex<double> spatial_channel(const ChannelParams& p, double t_s, int u, int s);

}  // namespace acosim
