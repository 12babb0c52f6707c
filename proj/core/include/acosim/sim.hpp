#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acosim/coverage.hpp"
#include "acosim/engine.hpp"
#include "acosim/radio.hpp"
#include "acosim/scenario.hpp"

namespace acosim {

// Toroidal replication of the site lattice: every displacement is reduced to
// its minimal image so the cluster has no boundary.
struct HexLattice {
    Vec2 t1{};
    Vec2 t2{};

    static HexLattice for_cluster(int sites, double isd_m);
    Vec2 reduce(Vec2 d) const;
    double area() const { return std::abs(t1.x * t2.y - t1.y * t2.x); }
};

struct CellRuntime {
    CellGeometry geom;
    IdealCoverage plan;
    CellState state;
    CoverageMap map;
    int pci{0};
    double boresight_fault_offset_deg{0.0};  // physical offset (Rotated fault)
    ActionWindow window;
    int eopt_period{1};
    int eopt_countdown{1};
    int gated_streak{0};
    int ue_count{0};
    DropSpec drop;
};

struct Ue {
    Vec2 pos{};
    int home_cell{0};
};

struct Network {
    SimulationConfig cfg;
    HexLattice lattice;
    std::vector<CellRuntime> cells;
    std::vector<Ue> ues;
    std::vector<std::vector<double>> shadow_db;  // [cell][ue]
    Eigen::MatrixXcd phi;                        // UL->DL signature transform
    int round{0};
};

// Build the wraparound cluster, drop users, apply faults.
// Throws std::invalid_argument on bad fault targets.
Network drop_network(const SimulationConfig& cfg, const FaultSpec& faults);

// Gains/level queries used by both the window simulation and the KPI grid.
double cell_rsrp_dbm(const Network& net, int cell, const Vec2& pos,
                     double shadow_db = 0.0, bool data_beam = false);
double cell_distance_m(const Network& net, int cell, const Vec2& pos);
int serving_cell(const Network& net, const Vec2& pos, const double* shadow_col = nullptr);

struct CellWindow {
    CellWindowStats stats;
    AggregatedMap agg;
    std::vector<MeasurementReport> accepted;
    std::int64_t dropped_out_of_sector{0};
};

struct WindowResult {
    std::vector<CellWindow> cells;
    // Optional per-cell sample spectrum (first served UE), for export.
    std::vector<std::optional<SpatialSpectrum>> spectra;
};

// One measurement window: UL snapshots -> AoA -> AoD -> TA -> RSRP, projected
// onto the per-cell maps and aggregated.
WindowResult simulate_window(Network& net, bool record_spectra = false);

struct KpiReport {
    int grid_na{0};
    int grid_nb{0};
    std::vector<Vec2> grid_pos;
    std::vector<double> grid_rsrp_dbm;   // best server, row-major
    std::vector<double> grid_sinr_db;
    std::vector<double> rsrp_sorted_dbm;
    double coverage_at_85{0.0};
    double coverage_at_80{0.0};
    int hole_count{0};               // contiguous bins below -110 dBm
    double mean_tput_proxy{0.0};     // mean log2(1+sinr), capped at 6
    double rrc_fail_frac{0.0};       // bins with SINR below -6 dB
};

KpiReport kpi(const Network& net, double grid_step_m);

struct RoundLogEntry {
    int round{0};
    int cell{0};
    bool evaluated{false};  // false while waiting on the t_eopt schedule
    GateResult gate;
    Classification classification{Classification::Normal};
    Action proposed;
    Action applied;
    CellState after;
};

struct RunResult {
    std::vector<KpiReport> kpis;  // rounds + 1 entries, index 0 = baseline
    std::vector<RoundLogEntry> log;
    std::vector<WindowResult> windows;  // one per round
};

RunResult run_rounds(Network& net, int rounds, double kpi_grid_step_m,
                     bool record_spectra = false);

}  // namespace acosim
