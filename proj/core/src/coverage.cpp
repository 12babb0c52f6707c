#include "acosim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace acosim {

void CellGeometry::validate() const {
    if (!(h_bs_m > h_ms_m) || !(h_ms_m > 0.0))
        throw std::invalid_argument("cell geometry: requires h_bs > h_ms > 0");
    double tilt = theta_geo_deg + theta_verb_deg;
    if (!(tilt > 0.0) || !(tilt < 90.0))
        throw std::invalid_argument("cell geometry: theta_geo + theta_verb must lie in (0, 90)");
    if (sector_width_deg <= 0.0 || sector_width_deg > 360.0)
        throw std::invalid_argument("cell geometry: sector width out of range");
}

IdealCoverage ideal_coverage(const CellGeometry& geom, int n_d) {
    if (n_d < 1) throw std::invalid_argument("ideal_coverage: n_d must be >= 1");
    if (!(geom.h_bs_m > geom.h_ms_m))
        throw std::domain_error("ideal_coverage: degenerate geometry, h_bs <= h_ms");
    double tilt = geom.theta_geo_deg + geom.theta_verb_deg;
    if (!(tilt > 0.0) || !(tilt < 90.0))
        throw std::domain_error("ideal_coverage: degenerate tilt angle");
    IdealCoverage out;
    out.theta_tilt_deg = tilt;
    out.r_exp_m = (geom.h_bs_m - geom.h_ms_m) / std::tan(deg2rad(tilt));
    out.d_m = out.r_exp_m / n_d;
    return out;
}

IdealCoverage ideal_coverage_from_range(double h_bs_m, double h_ms_m,
                                        double r_exp_m, int n_d) {
    if (n_d < 1) throw std::invalid_argument("ideal_coverage: n_d must be >= 1");
    if (!(h_bs_m > h_ms_m))
        throw std::domain_error("ideal_coverage: degenerate geometry, h_bs <= h_ms");
    if (!(r_exp_m > 0.0))
        throw std::domain_error("ideal_coverage: r_exp must be positive");
    IdealCoverage out;
    out.theta_tilt_deg = rad2deg(std::atan2(h_bs_m - h_ms_m, r_exp_m));
    out.r_exp_m = r_exp_m;
    out.d_m = r_exp_m / n_d;
    return out;
}

double empirical_gain(double h_bs_m, double r_exp_m, double theta_verb_deg) {
    double arg = h_bs_m - std::pow(r_exp_m, 0.8);
    if (!(arg > 0.0))
        throw std::domain_error("empirical_gain: h_bs - r_exp^0.8 must be positive");
    if (!(theta_verb_deg > 1.0))
        throw std::domain_error("empirical_gain: theta_verb must exceed 1 degree");
    return 3.0 * std::log(arg) * std::log10(theta_verb_deg);
}

RingSpec RingSpec::uniform(const IdealCoverage& ideal, std::vector<int> splits) {
    RingSpec spec;
    spec.splits = std::move(splits);
    spec.boundaries_m.resize(spec.splits.size());
    for (std::size_t i = 0; i < spec.splits.size(); ++i)
        spec.boundaries_m[i] = ideal.d_m * static_cast<double>(i + 1);
    spec.validate();
    return spec;
}

void RingSpec::validate() const {
    if (boundaries_m.empty())
        throw std::invalid_argument("ring spec: needs at least one ring");
    if (boundaries_m.size() != splits.size())
        throw std::invalid_argument("ring spec: boundary count does not match split count");
    double prev = 0.0;
    for (double b : boundaries_m) {
        if (!(b > prev))
            throw std::invalid_argument("ring spec: boundaries must be strictly increasing and positive");
        prev = b;
    }
    int prev_split = 0;
    for (int s : splits) {
        if (s < 1) throw std::invalid_argument("ring spec: split counts must be >= 1");
        if (s < prev_split)
            throw std::invalid_argument("ring spec: angle splits must be non-decreasing with distance");
        prev_split = s;
    }
}

int RingSpec::total_subareas() const {
    int n = 0;
    for (int s : splits) n += s;
    return n;
}

CoverageMap::CoverageMap(int cell_id, RingSpec spec, RsrpAveraging avg)
    : cell_id_(cell_id), spec_(std::move(spec)), avg_(avg) {
    spec_.validate();
    acc_.resize(spec_.splits.size());
    for (std::size_t r = 0; r < acc_.size(); ++r)
        acc_[r].assign(static_cast<std::size_t>(spec_.splits[r]), Acc{});
}

CoverageMap::Acc& CoverageMap::at(SubAreaIndex idx) {
    return acc_[static_cast<std::size_t>(idx.ring)][static_cast<std::size_t>(idx.bin)];
}

const CoverageMap::Acc& CoverageMap::at(SubAreaIndex idx) const {
    return acc_[static_cast<std::size_t>(idx.ring)][static_cast<std::size_t>(idx.bin)];
}

std::optional<SubAreaIndex> CoverageMap::locate(double range_m, double az_off_deg) const {
    const double half = 60.0;
    if (az_off_deg < -half || az_off_deg > half) return std::nullopt;
    if (range_m < 0.0) return std::nullopt;

    int nr = spec_.rings();
    int ring = nr - 1;  // clamp beyond the outer boundary
    for (int r = 0; r < nr; ++r) {
        if (range_m < spec_.boundaries_m[static_cast<std::size_t>(r)]) {
            ring = r;
            break;
        }
    }

    int k = spec_.splits[static_cast<std::size_t>(ring)];
    double width = 2.0 * half / k;
    int bin = static_cast<int>(std::floor((az_off_deg + half) / width));
    bin = std::clamp(bin, 0, k - 1);
    return SubAreaIndex{ring, bin};
}

SubAreaBounds CoverageMap::bounds(SubAreaIndex idx) const {
    SubAreaBounds b;
    b.inner_m = idx.ring == 0 ? 0.0 : spec_.boundaries_m[static_cast<std::size_t>(idx.ring - 1)];
    b.outer_m = spec_.boundaries_m[static_cast<std::size_t>(idx.ring)];
    int k = spec_.splits[static_cast<std::size_t>(idx.ring)];
    double width = 120.0 / k;
    b.start_off_deg = -60.0 + idx.bin * width;
    b.end_off_deg = b.start_off_deg + width;
    return b;
}

Vec2 CoverageMap::centroid_polar(SubAreaIndex idx) const {
    SubAreaBounds b = bounds(idx);
    return {0.5 * (b.inner_m + b.outer_m), 0.5 * (b.start_off_deg + b.end_off_deg)};
}

std::optional<SubAreaIndex> CoverageMap::project(const CellGeometry& geom,
                                                 const MeasurementReport& mr) {
    double off = wrap_deg(mr.azimuth_deg - geom.boresight_deg);
    auto idx = locate(mr.range_m, off);
    if (!idx) {
        ++dropped_;
        return std::nullopt;
    }
    Acc& a = at(*idx);
    a.count += 1;
    double rsrp = avg_ == RsrpAveraging::Dbm ? mr.rsrp_dbm : dbm_to_mw(mr.rsrp_dbm);
    a.mean_rsrp += (rsrp - a.mean_rsrp) / static_cast<double>(a.count);
    a.mean_range += (mr.range_m - a.mean_range) / static_cast<double>(a.count);
    if (!any_) {
        t_min_ = t_max_ = mr.t_s;
        any_ = true;
    } else {
        t_min_ = std::min(t_min_, mr.t_s);
        t_max_ = std::max(t_max_, mr.t_s);
    }
    return idx;
}

AggregatedMap CoverageMap::window_average() {
    AggregatedMap out;
    out.cell_id = cell_id_;
    out.t_begin_s = t_min_;
    out.t_end_s = t_max_;
    for (int r = 0; r < spec_.rings(); ++r) {
        for (int b = 0; b < spec_.splits[static_cast<std::size_t>(r)]; ++b) {
            SubAreaIndex idx{r, b};
            const Acc& a = at(idx);
            AggregatedSubArea s;
            s.idx = idx;
            s.bounds = bounds(idx);
            s.count = a.count;
            if (a.count > 0) {
                s.mean_rsrp_dbm =
                    avg_ == RsrpAveraging::Dbm ? a.mean_rsrp : mw_to_dbm(a.mean_rsrp);
                s.mean_range_m = a.mean_range;
            }
            out.total_count += a.count;
            out.subareas.push_back(s);
        }
    }
    for (auto& ring : acc_) std::fill(ring.begin(), ring.end(), Acc{});
    dropped_ = 0;
    any_ = false;
    t_min_ = t_max_ = 0.0;
    return out;
}

}  // namespace acosim
