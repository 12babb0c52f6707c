#include "acosim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acosim {

void RsConfig::validate() const {
    if (!(p_rs_min_dbm <= p_rs_max_dbm))
        throw std::invalid_argument("rs config: power bounds inverted");
    if (p_rs_dbm < p_rs_min_dbm || p_rs_dbm > p_rs_max_dbm)
        throw std::invalid_argument("rs config: p_rs outside its bounds");
    if (reuse_n < 1) throw std::invalid_argument("rs config: reuse factor must be >= 1");
}

std::vector<std::complex<double>> rs_waveform(std::span<const std::uint8_t> bits,
                                              std::size_t count) {
    if (bits.size() < 2 * count)
        throw std::invalid_argument("rs_waveform: insufficient bits for requested symbols");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> out(count);
    for (std::size_t m = 0; m < count; ++m) {
        double re = (1.0 - 2.0 * bits[2 * m]) * inv_sqrt2;
        double im = (1.0 - 2.0 * bits[2 * m + 1]) * inv_sqrt2;
        out[m] = {re, im};
    }
    return out;
}

double AntennaPattern::vertical_attenuation_db(double elev_deg) const {
    double x = (elev_deg - tilt_deg) / theta_3db_deg;
    return std::min(12.0 * x * x, sla_v_db);
}

double AntennaPattern::horizontal_attenuation_db(double az_off_deg) const {
    double x = wrap_deg(az_off_deg) / phi_3db_deg;
    return std::min(12.0 * x * x, backlobe_db);
}

double AntennaPattern::gain_dbi(double az_off_deg, double elev_deg) const {
    double att = std::min(horizontal_attenuation_db(az_off_deg) +
                              vertical_attenuation_db(elev_deg),
                          backlobe_db);
    return g_max_dbi - att + extra_gain_db;
}

double rsrp(double p_rs_dbm, const LinkBudget& link) {
    if (!(link.h_linear > 0.0)) return kDeepOutageDbm;
    return p_rs_dbm - link.pathloss_db + link.g_bs_dbi + link.g_ms_dbi +
           linear_to_db(link.h_linear);
}

namespace {
double link_gain_linear(const LinkBudget& link) {
    return db_to_linear(-link.pathloss_db + link.g_bs_dbi + link.g_ms_dbi) *
           link.h_linear;
}
}  // namespace

double rs_sinr(const LinkBudget& serving, double p_rs_dbm,
               const std::vector<std::pair<LinkBudget, double>>& interferers) {
    double num = dbm_to_mw(p_rs_dbm) * link_gain_linear(serving);
    double den = dbm_to_mw(serving.noise_dbm);
    for (const auto& [link, p_d] : interferers)
        den += dbm_to_mw(p_d) * link_gain_linear(link);
    return num / den;
}

TaMeasurement measure_ta(double distance_m) {
    if (distance_m < 0.0) throw std::domain_error("measure_ta: negative distance");
    TaMeasurement out;
    out.ta = static_cast<int>(std::llround(distance_m / kTaSampleMeters));
    out.range_m = out.ta * kTaSampleMeters;
    return out;
}

std::complex<double> spatial_channel(const ChannelParams& p, double t_s, int u, int s) {
    if (p.sub.empty()) throw std::invalid_argument("spatial_channel: needs >= 1 sub-path");
    const double m_sub = static_cast<double>(p.sub.size());
    const double scale = std::sqrt(p.p_n * p.sigma_sf / m_sub);
    const double d_s = s * p.tx_spacing_m;
    const double d_u = u * p.rx_spacing_m;

    std::complex<double> sum{0.0, 0.0};
    for (const SubPath& sp : p.sub) {
        double sin_aod = std::sin(deg2rad(sp.aod_deg));
        double sin_aoa = std::sin(deg2rad(sp.aoa_deg));
        double doppler =
            p.wavenumber * p.speed_mps *
            std::cos(deg2rad(sp.aoa_deg) - deg2rad(p.travel_deg)) * t_s;
        double phase = p.wavenumber * d_s * sin_aod + sp.phase_rad +
                       p.wavenumber * d_u * sin_aoa + doppler;
        sum += std::sqrt(sp.g_bs) * std::sqrt(sp.g_ms) * std::polar(1.0, phase);
    }
    return scale * sum;
}

}  // namespace acosim
