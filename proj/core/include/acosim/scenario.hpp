#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acosim/array_signal.hpp"
#include "acosim/engine.hpp"

namespace acosim {

struct ScenarioError : std::runtime_error {
    int line;
    ScenarioError(const std::string& msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

struct DropRing {
    double r0_m{0.0};
    double r1_m{0.0};
    int count{0};
    bool operator==(const DropRing&) const = default;
};

// Where a cell's users are dropped inside its sector wedge.
struct DropSpec {
    enum class Kind { Uniform, Rings };
    Kind kind{Kind::Uniform};
    std::optional<double> r_max_m;  // Uniform; nullopt = half the ISD
    std::vector<DropRing> rings;
    bool operator==(const DropSpec&) const = default;
};

struct CellOverride {
    std::optional<double> r_exp_m;
    std::optional<double> theta_geo_deg;
    std::optional<double> theta_verb_deg;
    std::optional<double> h_bs_m;
    std::optional<int> tilt0_deg;
    std::optional<int> tilt_min_deg;
    std::optional<int> tilt_max_deg;
    std::optional<double> p_rs_dbm;
    std::optional<double> p_rs_min_dbm;
    std::optional<double> p_rs_max_dbm;
    std::optional<DropSpec> drop;
    std::optional<int> ues;
};

struct FaultSpec {
    enum class Kind { OvershootTilt, LimitedTilt, PowerHole, Rotated };
    struct Fault {
        int cell{0};
        Kind kind{Kind::OvershootTilt};
        std::optional<double> param;  // tilt deg / power dBm / rotation deg
    };
    std::vector<Fault> faults;
};

const char* to_string(FaultSpec::Kind k);

enum class AodMode { Identity, Phi };

struct SimulationConfig {
    // network
    int sites{7};
    int sectors_per_site{3};
    int ues_per_cell{10};
    double isd_m{1500.0};
    std::uint64_t seed{1};

    // geometry / map
    double h_bs_m{30.0};
    double h_ms_m{1.5};
    std::optional<double> r_exp_m{840.0};  // nullopt: derive from the tilt pair
    double theta_geo_deg{2.0};
    double theta_verb_deg{6.5};
    int n_d{4};
    std::vector<int> splits{2, 4, 8, 8};
    std::optional<double> drop_r_max_m;  // nullopt = isd/2

    // radio
    double p_rs_dbm{15.0};
    double p_rs_min_dbm{0.0};
    double p_rs_max_dbm{18.0};
    int pci_reuse{3};
    double g_max_dbi{14.0};
    double phi_3db_deg{70.0};
    double theta_3db_deg{6.5};
    double sla_v_db{20.0};
    double backlobe_db{25.0};
    double pl_const_db{128.1};
    double pl_slope_db_decade{37.6};
    double pl_min_dist_m{35.0};
    double noise_dbm{-116.0};
    double sigma_sf_db{0.0};
    double ul_snr_db{20.0};
    int ul_snapshots{64};
    int ul_subpaths{1};
    double ul_angle_spread_deg{0.0};
    bool use_empirical_gain{false};
    bool rsrp_linear_avg{false};
    double outage_floor_dbm{-115.0};  // below this no cell serves the UE

    // array
    ArrayConfig bs_array{4, 0.5, 1.92e9, 2.11e9, 2.0e9};
    int ms_antennas{2};
    AodMode aod_mode{AodMode::Phi};
    double capon_grid_step_deg{0.5};

    // thresholds
    Thresholds thresholds{};

    // schedule
    int t_mr_minutes{15};
    int t_eopt_rounds{1};
    int window_w{3};
    int tilt_min_deg{0};
    int tilt_max_deg{15};

    // traffic
    double traffic_mean_gb_per_ue{3.0};
    double traffic_sigma_log{0.5};

    // kpi
    double kpi_grid_step_m{25.0};

    std::map<int, CellOverride> cell_overrides;

    int cell_count() const { return sites * sectors_per_site; }
    void validate() const;  // throws std::invalid_argument
};

struct Scenario {
    SimulationConfig cfg;
    FaultSpec faults;
};

// Strict section/key parser. Unknown keys raise ScenarioError unless lenient,
// in which case they are reported through `warnings`.
Scenario parse_scenario(const std::string& text, bool lenient = false,
                        std::vector<std::string>* warnings = nullptr);

// Canonical text form; parse(serialize(s)) reproduces s exactly.
std::string serialize_scenario(const Scenario& s);

Scenario default_scenario();

// Semantic checks beyond per-field parsing (threshold invariants, fault
// targets, drop specs). Throws std::invalid_argument.
void validate_scenario(const Scenario& s);

// Shortest exact decimal representation (round-trips through parse).
std::string fmt_double(double v);

}  // namespace acosim
