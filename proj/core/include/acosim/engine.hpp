#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "acosim/coverage.hpp"

namespace acosim {

// Tunables of the optimization loop. Defaults follow the reference parameter set.
struct Thresholds {
    double tau_rsrp_dbm{-80.0};    // coverage gate on the CDF probe value
    double tau_traffic_gb{25.0};
    int tau_user{9};
    double partial_d{2.1};         // overshoot scale, > 1
    double epsilon_cov{0.4};       // limited-coverage scale, < 1
    double delta_p_db{1.0};        // RS power step
    double gamma_percentile{50.0}; // percentile of the measured-range CDF
    double x_rsrp_dbm{-95.0};      // sub-area faulty threshold (TWA membership)
    double epsilon_rot_deg{15.0};  // beam rotation step
    double cov_probe_percentile{75.0};
    double rotation_majority{0.8}; // AoD mass needed in one half to rotate
    double branch1_decisive{0.6};  // MR fraction on one side of r_exp/2

    void validate() const;  // throws std::invalid_argument
};

// Controllable radio state of one cell plus the planning references the
// decision rules need.
struct CellState {
    int cell_id{0};
    int tilt_deg{0};
    int tilt_min_deg{0};
    int tilt_max_deg{15};
    double p_rs_dbm{15.0};
    double p_rs_min_dbm{0.0};
    double p_rs_max_dbm{18.0};
    double rotation_deg{0.0};  // accumulated beam rotation, |rot| <= 60
    double r_exp_m{840.0};
    double h_bs_m{30.0};
    double h_ms_m{1.5};

    void validate() const;
};

enum class ActionKind { DownTilt, UpTilt, PowerDown, PowerUp, RotateBeam, NoOp };

enum class ActionCause {
    Overshoot,
    LimitedMajority,  // limited branch decided by the range percentile
    LimitedOuter,     // limited branch decided by faulty outer sub-areas
    LimitedInner,     // limited branch decided by faulty inner sub-areas
    AngularSkew,
    Gated,
    Normal,
};

struct Action {
    ActionKind kind{ActionKind::NoOp};
    double magnitude{0.0};  // degrees or dB; 0 only for NoOp
    int sign{+1};           // rotation direction: +1 right half, -1 left half
    ActionCause cause{ActionCause::Normal};
    std::uint64_t window_id{0};
    bool clamped{false};
    bool exhausted{false};    // all actuation headroom spent
    bool substituted{false};  // produced by the progressive filter
    bool no_data{false};

    bool is_tilt() const {
        return kind == ActionKind::DownTilt || kind == ActionKind::UpTilt;
    }
};

const char* to_string(ActionKind k);
const char* to_string(ActionCause c);

// Ring buffer of the last W applied actions of one cell, oldest first.
class ActionWindow {
public:
    explicit ActionWindow(std::size_t w = 3) : w_(w) {}

    void push(const Action& a);
    std::size_t size() const { return hist_.size(); }
    std::size_t capacity() const { return w_; }
    const Action& operator[](std::size_t i) const { return hist_[i]; }

    // True when the two most recent entries both have the given kind.
    bool last_two_are(ActionKind k) const;

private:
    std::size_t w_;
    std::deque<Action> hist_;
};

enum class GateReason { None, NoData, CoverageAdequate, Traffic, Users };

struct GateResult {
    bool proceed{false};
    GateReason reason{GateReason::None};
};

const char* to_string(GateReason r);

enum class Classification { Overshoot, Limited, Normal };

const char* to_string(Classification c);

// Windowed per-cell statistics the decision rules consume.
struct CellWindowStats {
    std::int64_t mr_count{0};
    int n_user{0};
    double v_traffic_gb{0.0};
    double r_md_avg_m{0.0};         // mean of TA-reported ranges
    double r_md_gamma_m{0.0};       // gamma-th percentile of reported ranges
    double rsrp_cov_dbm{0.0};       // RSRP exceeded by cov_probe_percentile of MRs
    double frac_below_half{0.0};    // fraction of ranges below r_exp/2
    std::int64_t aod_left{0};       // MR count in the [-60, 0) half
    std::int64_t aod_right{0};      // MR count in the [0, 60] half
};

// Linear-interpolated percentile of an unsorted sample set.
double percentile(std::vector<double> samples, double pct);

// Assemble window stats from raw accepted reports.
CellWindowStats build_window_stats(const std::vector<MeasurementReport>& mrs,
                                   double boresight_deg, double v_traffic_gb,
                                   int n_user, double r_exp_m, const Thresholds& th);

GateResult gate(const CellWindowStats& stats, const Thresholds& th);

Classification classify(const CellWindowStats& stats, double r_exp_m,
                        const Thresholds& th);

// floor(atan((h_bs - h_ms) / (2 d'))) in whole degrees. Throws on d' <= 0.
int tilt_correction(double h_bs_m, double h_ms_m, double d_prime_m);

Action overshoot_action(const CellState& state, const CellWindowStats& stats,
                        const Thresholds& th);

Action limited_action(const CellState& state, const AggregatedMap& agg,
                      const CellWindowStats& stats, const Thresholds& th);

Action angular_action(const CellWindowStats& stats, const Thresholds& th);

// Two same-direction tilts in the window turn a third proposal into the
// matching power step.
Action progressive_filter(const ActionWindow& window, Action proposed,
                          const CellState& state, const Thresholds& th);

struct ApplyOutcome {
    CellState state;
    Action applied;  // clamp flag set when a bound truncated the step
};

ApplyOutcome apply(const CellState& state, Action action);

struct RoundOutcome {
    CellState state;
    Action proposed;
    Action applied;
    GateResult gate;
    Classification classification{Classification::Normal};
};

// gate -> classify -> action -> progressive filter -> apply; the applied
// action is recorded into the window.
RoundOutcome run_cell_round(const CellState& state, ActionWindow& window,
                            const CellWindowStats& stats, const AggregatedMap& agg,
                            const Thresholds& th, std::uint64_t window_id = 0);

}  // namespace acosim
