#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acosim/common.hpp"

namespace acosim {

// Static geometry of one 120-degree sector.
struct CellGeometry {
    Vec2 site{};                    // site position, meters
    double boresight_deg{0.0};      // sector boresight azimuth, [0, 360)
    double h_bs_m{30.0};            // antenna height
    double h_ms_m{1.5};             // assumed UE height
    double theta_geo_deg{2.0};      // mechanical tilt
    double theta_verb_deg{6.5};     // vertical beamwidth / electrical tilt
    double sector_width_deg{120.0};

    void validate() const;  // throws std::invalid_argument
};

// Planned coverage derived from the geometry.
struct IdealCoverage {
    double theta_tilt_deg{0.0};
    double r_exp_m{0.0};
    double d_m{0.0};  // minimum sub-area depth, r_exp / n_d
};

// theta_tilt = theta_geo + theta_verb, r_exp = (h_bs - h_ms) / tan(theta_tilt).
// Throws std::domain_error for degenerate tilt or non-positive height gap.
IdealCoverage ideal_coverage(const CellGeometry& geom, int n_d);

// Planned coverage for a directly specified expected range (planning data may
// carry the range itself rather than the tilt pair).
IdealCoverage ideal_coverage_from_range(double h_bs_m, double h_ms_m,
                                        double r_exp_m, int n_d);

// Empirical vertical-gain correction, 3*ln(h_bs - r_exp^0.8)*log10(theta_verb).
// Throws std::domain_error when h_bs - r_exp^0.8 <= 0.
double empirical_gain(double h_bs_m, double r_exp_m, double theta_verb_deg);

// Angle-distance partition of a sector: ring boundaries (outer radii,
// strictly increasing) and per-ring angle split counts (non-decreasing).
struct RingSpec {
    std::vector<double> boundaries_m;
    std::vector<int> splits;

    static RingSpec uniform(const IdealCoverage& ideal, std::vector<int> splits);

    void validate() const;  // throws std::invalid_argument
    int rings() const { return static_cast<int>(boundaries_m.size()); }
    int total_subareas() const;
    double outer_radius_m() const { return boundaries_m.back(); }
};

struct SubAreaIndex {
    int ring{0};
    int bin{0};
    bool operator==(const SubAreaIndex&) const = default;
};

struct SubAreaBounds {
    double inner_m{0.0};
    double outer_m{0.0};
    double start_off_deg{0.0};  // offset from boresight
    double end_off_deg{0.0};
};

// One localized user report.
struct MeasurementReport {
    double rsrp_dbm{0.0};
    double range_m{0.0};    // TA-reported range
    double azimuth_deg{0.0};  // absolute azimuth, [0, 360)
    double t_s{0.0};
};

enum class RsrpAveraging { Dbm, Linear };

struct AggregatedSubArea {
    SubAreaIndex idx{};
    SubAreaBounds bounds{};
    std::int64_t count{0};
    double mean_rsrp_dbm{0.0};  // defined only when count > 0
    double mean_range_m{0.0};
};

// Frozen per-window snapshot of a cell map.
struct AggregatedMap {
    int cell_id{0};
    std::vector<AggregatedSubArea> subareas;
    double t_begin_s{0.0};
    double t_end_s{0.0};
    std::int64_t total_count{0};
};

// Per-cell angle-distance accumulator of measurement reports. Single writer
// per cell; snapshots are value copies safe to share.
class CoverageMap {
public:
    CoverageMap(int cell_id, RingSpec spec, RsrpAveraging avg = RsrpAveraging::Dbm);

    int cell_id() const { return cell_id_; }
    const RingSpec& spec() const { return spec_; }
    int total_subareas() const { return spec_.total_subareas(); }

    // Pure lookup: which sub-area contains (range, azimuth offset)?
    // Ranges beyond the outer boundary clamp to the outermost ring so
    // overshooters still land on the map. Out-of-sector offsets yield nullopt.
    std::optional<SubAreaIndex> locate(double range_m, double az_off_deg) const;

    SubAreaBounds bounds(SubAreaIndex idx) const;
    Vec2 centroid_polar(SubAreaIndex idx) const;  // {range, az offset}

    // Project one report and update its sub-area accumulator. Returns nullopt
    // (and counts a drop) when the report azimuth is outside the sector.
    std::optional<SubAreaIndex> project(const CellGeometry& geom,
                                        const MeasurementReport& mr);

    // Freeze the current window into a snapshot and reset the accumulators.
    AggregatedMap window_average();

    std::int64_t dropped_out_of_sector() const { return dropped_; }

private:
    struct Acc {
        std::int64_t count{0};
        double mean_rsrp{0.0};   // dBm or mW depending on averaging mode
        double mean_range{0.0};
    };

    Acc& at(SubAreaIndex idx);
    const Acc& at(SubAreaIndex idx) const;

    int cell_id_;
    RingSpec spec_;
    RsrpAveraging avg_;
    std::vector<std::vector<Acc>> acc_;
    std::int64_t dropped_{0};
    double t_min_{0.0}, t_max_{0.0};
    bool any_{false};
};

}  // namespace acosim
