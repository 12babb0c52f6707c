#include "acosim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace acosim {

void Thresholds::validate() const {
    if (!(partial_d > 1.0))
        throw std::invalid_argument("thresholds: partial_d must exceed 1");
    if (!(epsilon_cov > 0.0) || !(epsilon_cov < 1.0))
        throw std::invalid_argument("thresholds: epsilon_cov must lie in (0, 1)");
    if (!(partial_d >= 2.0 * epsilon_cov))
        throw std::invalid_argument("thresholds: partial_d must be >= 2 * epsilon_cov");
    if (!(delta_p_db > 0.0))
        throw std::invalid_argument("thresholds: delta_p must be positive");
    if (tau_user < 0) throw std::invalid_argument("thresholds: tau_user must be >= 0");
    if (gamma_percentile < 0.0 || gamma_percentile > 100.0)
        throw std::invalid_argument("thresholds: gamma percentile out of range");
    if (cov_probe_percentile < 0.0 || cov_probe_percentile > 100.0)
        throw std::invalid_argument("thresholds: coverage probe percentile out of range");
    if (rotation_majority <= 0.5 || rotation_majority > 1.0)
        throw std::invalid_argument("thresholds: rotation majority must lie in (0.5, 1]");
    if (branch1_decisive <= 0.5 || branch1_decisive > 1.0)
        throw std::invalid_argument("thresholds: branch1 decisive fraction must lie in (0.5, 1]");
    if (!(epsilon_rot_deg >= 0.0))
        throw std::invalid_argument("thresholds: epsilon_rot must be >= 0");
}

void CellState::validate() const {
    if (tilt_min_deg > tilt_max_deg)
        throw std::invalid_argument("cell state: tilt bounds inverted");
    if (tilt_deg < tilt_min_deg || tilt_deg > tilt_max_deg)
        throw std::invalid_argument("cell state: tilt outside bounds");
    if (p_rs_min_dbm > p_rs_max_dbm)
        throw std::invalid_argument("cell state: power bounds inverted");
    if (p_rs_dbm < p_rs_min_dbm || p_rs_dbm > p_rs_max_dbm)
        throw std::invalid_argument("cell state: p_rs outside bounds");
    if (std::abs(rotation_deg) > 60.0)
        throw std::invalid_argument("cell state: |rotation| must be <= 60");
    if (!(r_exp_m > 0.0)) throw std::invalid_argument("cell state: r_exp must be positive");
}

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::DownTilt: return "down_tilt";
        case ActionKind::UpTilt: return "up_tilt";
        case ActionKind::PowerDown: return "power_down";
        case ActionKind::PowerUp: return "power_up";
        case ActionKind::RotateBeam: return "rotate_beam";
        case ActionKind::NoOp: return "no_op";
    }
    return "?";
}

const char* to_string(ActionCause c) {
    switch (c) {
        case ActionCause::Overshoot: return "overshoot";
        case ActionCause::LimitedMajority: return "limited_majority";
        case ActionCause::LimitedOuter: return "limited_outer";
        case ActionCause::LimitedInner: return "limited_inner";
        case ActionCause::AngularSkew: return "angular_skew";
        case ActionCause::Gated: return "gated";
        case ActionCause::Normal: return "normal";
    }
    return "?";
}

const char* to_string(GateReason r) {
    switch (r) {
        case GateReason::None: return "none";
        case GateReason::NoData: return "no_data";
        case GateReason::CoverageAdequate: return "coverage_adequate";
        case GateReason::Traffic: return "traffic";
        case GateReason::Users: return "users";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Overshoot: return "overshoot";
        case Classification::Limited: return "limited";
        case Classification::Normal: return "normal";
    }
    return "?";
}

void ActionWindow::push(const Action& a) {
    hist_.push_back(a);
    while (hist_.size() > w_) hist_.pop_front();
}

bool ActionWindow::last_two_are(ActionKind k) const {
    if (hist_.size() < 2) return false;
    return hist_[hist_.size() - 1].kind == k && hist_[hist_.size() - 2].kind == k;
}

double percentile(std::vector<double> samples, double pct) {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(samples.begin(), samples.end());
    if (samples.size() == 1) return samples[0];
    double pos = (pct / 100.0) * static_cast<double>(samples.size() - 1);
    pos = std::clamp(pos, 0.0, static_cast<double>(samples.size() - 1));
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, samples.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return samples[lo] + (samples[hi] - samples[lo]) * frac;
}

CellWindowStats build_window_stats(const std::vector<MeasurementReport>& mrs,
                                   double boresight_deg, double v_traffic_gb,
                                   int n_user, double r_exp_m, const Thresholds& th) {
    CellWindowStats st;
    st.mr_count = static_cast<std::int64_t>(mrs.size());
    st.n_user = n_user;
    st.v_traffic_gb = v_traffic_gb;
    if (mrs.empty()) {
        st.rsrp_cov_dbm = std::numeric_limits<double>::quiet_NaN();
        st.r_md_avg_m = std::numeric_limits<double>::quiet_NaN();
        st.r_md_gamma_m = std::numeric_limits<double>::quiet_NaN();
        return st;
    }
    std::vector<double> ranges, rsrps;
    ranges.reserve(mrs.size());
    rsrps.reserve(mrs.size());
    std::int64_t below = 0;
    for (const auto& mr : mrs) {
        ranges.push_back(mr.range_m);
        rsrps.push_back(mr.rsrp_dbm);
        if (mr.range_m < 0.5 * r_exp_m) ++below;
        double off = wrap_deg(mr.azimuth_deg - boresight_deg);
        if (off < 0.0)
            ++st.aod_left;
        else
            ++st.aod_right;
    }
    double sum = 0.0;
    for (double r : ranges) sum += r;
    st.r_md_avg_m = sum / static_cast<double>(ranges.size());
    st.r_md_gamma_m = percentile(ranges, th.gamma_percentile);
    // Value exceeded by cov_probe_percentile of the samples: the lower
    // (100 - probe) percentile of the RSRP distribution.
    st.rsrp_cov_dbm = percentile(rsrps, 100.0 - th.cov_probe_percentile);
    st.frac_below_half = static_cast<double>(below) / static_cast<double>(ranges.size());
    return st;
}

GateResult gate(const CellWindowStats& stats, const Thresholds& th) {
    if (stats.mr_count == 0) return {false, GateReason::NoData};
    if (!(stats.rsrp_cov_dbm <= th.tau_rsrp_dbm))
        return {false, GateReason::CoverageAdequate};
    if (!(stats.v_traffic_gb >= th.tau_traffic_gb)) return {false, GateReason::Traffic};
    if (!(stats.n_user >= th.tau_user)) return {false, GateReason::Users};
    return {true, GateReason::None};
}

Classification classify(const CellWindowStats& stats, double r_exp_m,
                        const Thresholds& th) {
    if (stats.r_md_avg_m > th.partial_d * r_exp_m) return Classification::Overshoot;
    if (stats.r_md_avg_m < th.epsilon_cov * r_exp_m) return Classification::Limited;
    return Classification::Normal;
}

int tilt_correction(double h_bs_m, double h_ms_m, double d_prime_m) {
    if (!(d_prime_m > 0.0))
        throw std::domain_error("tilt_correction: d' must be positive");
    double gap = h_bs_m - h_ms_m;
    if (gap < 0.0) gap = 0.0;
    return static_cast<int>(std::floor(rad2deg(std::atan(gap / (2.0 * d_prime_m)))));
}

namespace {

// Escalate a tilt proposal to the matching power step when tilt actuation is
// not possible (no headroom or a floor-zero correction).
Action tilt_or_power(const CellState& state, ActionKind tilt_kind, int correction,
                     ActionCause cause, const Thresholds& th) {
    Action a;
    a.cause = cause;
    bool headroom = tilt_kind == ActionKind::DownTilt
                        ? state.tilt_deg < state.tilt_max_deg
                        : state.tilt_deg > state.tilt_min_deg;
    if (headroom && correction >= 1) {
        a.kind = tilt_kind;
        a.magnitude = correction;
        return a;
    }
    ActionKind power_kind =
        tilt_kind == ActionKind::DownTilt ? ActionKind::PowerDown : ActionKind::PowerUp;
    bool power_headroom = power_kind == ActionKind::PowerDown
                              ? state.p_rs_dbm > state.p_rs_min_dbm
                              : state.p_rs_dbm < state.p_rs_max_dbm;
    if (power_headroom) {
        a.kind = power_kind;
        a.magnitude = th.delta_p_db;
        return a;
    }
    a.kind = ActionKind::NoOp;
    a.exhausted = true;
    return a;
}

}  // namespace

Action overshoot_action(const CellState& state, const CellWindowStats& stats,
                        const Thresholds& th) {
    double d_prime = stats.r_md_avg_m - state.r_exp_m;
    int corr = d_prime > 0.0 ? tilt_correction(state.h_bs_m, state.h_ms_m, d_prime) : 0;
    return tilt_or_power(state, ActionKind::DownTilt, corr, ActionCause::Overshoot, th);
}

Action limited_action(const CellState& state, const AggregatedMap& agg,
                      const CellWindowStats& stats, const Thresholds& th) {
    if (stats.mr_count == 0 || agg.total_count == 0) {
        Action a;
        a.kind = ActionKind::NoOp;
        a.cause = ActionCause::LimitedMajority;
        a.no_data = true;
        return a;
    }

    const double half = 0.5 * state.r_exp_m;
    ActionKind tilt_kind;
    ActionCause cause;
    bool inner_decisive = stats.frac_below_half >= th.branch1_decisive;
    bool outer_decisive = (1.0 - stats.frac_below_half) >= th.branch1_decisive;

    if (inner_decisive || outer_decisive) {
        // Majority branch: aim at the side of r_exp/2 holding the users.
        if (stats.r_md_gamma_m < half) {
            tilt_kind = ActionKind::DownTilt;
        } else {
            tilt_kind = ActionKind::UpTilt;
        }
        cause = ActionCause::LimitedMajority;
    } else {
        // Diverse distribution: count faulty sub-areas (TWA members) on each
        // side of r_exp/2 by their radial midpoint.
        int c_a = 0, c_b = 0;
        for (const auto& s : agg.subareas) {
            if (s.count == 0 || !(s.mean_rsrp_dbm < th.x_rsrp_dbm)) continue;
            double mid = 0.5 * (s.bounds.inner_m + s.bounds.outer_m);
            if (mid > half)
                ++c_a;
            else
                ++c_b;
        }
        if (c_a > c_b) {
            tilt_kind = ActionKind::UpTilt;
            cause = ActionCause::LimitedOuter;
        } else {
            tilt_kind = ActionKind::DownTilt;
            cause = ActionCause::LimitedInner;
        }
    }

    double d_prime = tilt_kind == ActionKind::DownTilt ? 0.25 * state.r_exp_m
                                                       : 0.75 * state.r_exp_m;
    int corr = tilt_correction(state.h_bs_m, state.h_ms_m, d_prime);
    return tilt_or_power(state, tilt_kind, corr, cause, th);
}

Action angular_action(const CellWindowStats& stats, const Thresholds& th) {
    Action a;
    a.cause = ActionCause::Normal;
    std::int64_t total = stats.aod_left + stats.aod_right;
    if (total == 0) {
        a.kind = ActionKind::NoOp;
        a.no_data = true;
        return a;
    }
    std::int64_t heavy = std::max(stats.aod_left, stats.aod_right);
    double frac = static_cast<double>(heavy) / static_cast<double>(total);
    if (frac >= th.rotation_majority && th.epsilon_rot_deg > 0.0) {
        a.kind = ActionKind::RotateBeam;
        a.magnitude = th.epsilon_rot_deg;
        a.sign = stats.aod_right >= stats.aod_left ? +1 : -1;
        a.cause = ActionCause::AngularSkew;
        return a;
    }
    a.kind = ActionKind::NoOp;
    return a;
}

Action progressive_filter(const ActionWindow& window, Action proposed,
                          const CellState& state, const Thresholds& th) {
    if (!proposed.is_tilt()) return proposed;
    if (!window.last_two_are(proposed.kind)) return proposed;

    Action sub;
    sub.cause = proposed.cause;
    sub.window_id = proposed.window_id;
    sub.substituted = true;
    if (proposed.kind == ActionKind::DownTilt) {
        if (state.p_rs_dbm > state.p_rs_min_dbm) {
            sub.kind = ActionKind::PowerDown;
            sub.magnitude = th.delta_p_db;
        } else {
            sub.kind = ActionKind::NoOp;
            sub.exhausted = true;
        }
    } else {
        if (state.p_rs_dbm < state.p_rs_max_dbm) {
            sub.kind = ActionKind::PowerUp;
            sub.magnitude = th.delta_p_db;
        } else {
            sub.kind = ActionKind::NoOp;
            sub.exhausted = true;
        }
    }
    return sub;
}

ApplyOutcome apply(const CellState& state, Action action) {
    ApplyOutcome out;
    out.state = state;
    switch (action.kind) {
        case ActionKind::DownTilt: {
            int target = state.tilt_deg + static_cast<int>(action.magnitude);
            if (target > state.tilt_max_deg) {
                target = state.tilt_max_deg;
                action.clamped = true;
            }
            out.state.tilt_deg = target;
            break;
        }
        case ActionKind::UpTilt: {
            int target = state.tilt_deg - static_cast<int>(action.magnitude);
            if (target < state.tilt_min_deg) {
                target = state.tilt_min_deg;
                action.clamped = true;
            }
            out.state.tilt_deg = target;
            break;
        }
        case ActionKind::PowerDown: {
            double target = state.p_rs_dbm - action.magnitude;
            if (target < state.p_rs_min_dbm) {
                target = state.p_rs_min_dbm;
                action.clamped = true;
            }
            out.state.p_rs_dbm = target;
            break;
        }
        case ActionKind::PowerUp: {
            double target = state.p_rs_dbm + action.magnitude;
            if (target > state.p_rs_max_dbm) {
                target = state.p_rs_max_dbm;
                action.clamped = true;
            }
            out.state.p_rs_dbm = target;
            break;
        }
        case ActionKind::RotateBeam: {
            double target = state.rotation_deg + action.sign * action.magnitude;
            if (target > 60.0) {
                target = 60.0;
                action.clamped = true;
            } else if (target < -60.0) {
                target = -60.0;
                action.clamped = true;
            }
            out.state.rotation_deg = target;
            break;
        }
        case ActionKind::NoOp:
            break;
    }
    out.applied = action;
    return out;
}

RoundOutcome run_cell_round(const CellState& state, ActionWindow& window,
                            const CellWindowStats& stats, const AggregatedMap& agg,
                            const Thresholds& th, std::uint64_t window_id) {
    RoundOutcome out;
    out.gate = gate(stats, th);
    if (!out.gate.proceed) {
        Action a;
        a.kind = ActionKind::NoOp;
        a.cause = ActionCause::Gated;
        a.window_id = window_id;
        out.proposed = a;
        out.applied = a;
        out.state = state;
        window.push(a);
        return out;
    }

    out.classification = classify(stats, state.r_exp_m, th);
    Action proposed;
    switch (out.classification) {
        case Classification::Overshoot:
            proposed = overshoot_action(state, stats, th);
            break;
        case Classification::Limited:
            proposed = limited_action(state, agg, stats, th);
            break;
        case Classification::Normal:
            proposed = angular_action(stats, th);
            break;
    }
    proposed.window_id = window_id;
    out.proposed = proposed;

    Action filtered = progressive_filter(window, proposed, state, th);
    filtered.window_id = window_id;
    ApplyOutcome applied = apply(state, filtered);
    out.state = applied.state;
    out.applied = applied.applied;
    window.push(out.applied);
    return out;
}

}  // namespace acosim
