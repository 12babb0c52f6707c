#include "acosim/array_signal.hpp"

#include <cmath>
#include <stdexcept>

#include "acosim/common.hpp"

namespace acosim {

void ArrayConfig::validate() const {
    if (m < 2) throw std::invalid_argument("array config: needs at least 2 elements");
    if (!(spacing_wl > 0.0)) throw std::invalid_argument("array config: spacing must be positive");
    if (!(f_ul_hz > 0.0) || !(f_dl_hz > 0.0) || !(f0_hz > 0.0))
        throw std::invalid_argument("array config: frequencies must be positive");
}

Eigen::VectorXcd steering_vector(double theta_deg, const ArrayConfig& cfg, Link link) {
    double ratio = (link == Link::Ul ? cfg.f_ul_hz : cfg.f_dl_hz) / cfg.f0_hz;
    double s = std::sin(deg2rad(theta_deg));
    Eigen::VectorXcd a(cfg.m);
    for (int k = 0; k < cfg.m; ++k) {
        double phase = -2.0 * kPi * cfg.spacing_wl * ratio * k * s;
        a(k) = std::polar(1.0, phase);
    }
    return a;
}

Eigen::VectorXcd fdd_transform_diag(double theta_deg, const ArrayConfig& cfg) {
    double ratio = (cfg.f_ul_hz - cfg.f_dl_hz) / cfg.f0_hz;
    double s = std::sin(deg2rad(theta_deg));
    Eigen::VectorXcd t(cfg.m);
    for (int k = 0; k < cfg.m; ++k) {
        double phase = 2.0 * kPi * cfg.spacing_wl * ratio * k * s;
        t(k) = std::polar(1.0, phase);
    }
    return t;
}

SnapshotSet SnapshotSet::from_snapshots(Eigen::MatrixXcd snapshots) {
    if (snapshots.cols() < 1)
        throw std::invalid_argument("snapshot set: needs at least one snapshot");
    SnapshotSet out;
    out.rxx = (snapshots * snapshots.adjoint()) / static_cast<double>(snapshots.cols());
    out.x = std::move(snapshots);
    return out;
}

SpatialSpectrum capon_estimate(const SnapshotSet& snapshots, const ArrayConfig& cfg,
                               double grid_step_deg,
                               std::optional<double> diagonal_loading) {
    if (!(grid_step_deg > 0.0))
        throw std::invalid_argument("capon: grid step must be positive");
    const Eigen::MatrixXcd& rxx = snapshots.rxx;
    if (rxx.rows() != cfg.m || rxx.cols() != cfg.m)
        throw std::invalid_argument("capon: covariance size does not match array");

    double loading = diagonal_loading
                         ? *diagonal_loading
                         : 1e-6 * rxx.trace().real() / static_cast<double>(cfg.m);
    Eigen::MatrixXcd loaded =
        rxx + loading * Eigen::MatrixXcd::Identity(cfg.m, cfg.m);

    Eigen::LDLT<Eigen::MatrixXcd> solver(loaded);
    if (solver.info() != Eigen::Success || !solver.isPositive())
        throw std::runtime_error("capon: covariance not invertible even with loading");

    SpatialSpectrum spec;
    int n = static_cast<int>(std::round(180.0 / grid_step_deg)) + 1;
    spec.angle_deg.reserve(n);
    spec.power.reserve(n);

    double best_power = -1.0;
    double best_angle = 0.0;
    for (int i = 0; i < n; ++i) {
        double theta = -90.0 + i * grid_step_deg;
        if (theta > 90.0) theta = 90.0;
        Eigen::VectorXcd a = steering_vector(theta, cfg, Link::Ul);
        double denom = a.dot(solver.solve(a)).real();  // a^H R^-1 a
        if (!(denom > 0.0) || !std::isfinite(denom))
            throw std::runtime_error("capon: covariance not positive definite on grid");
        double p = 1.0 / denom;
        spec.angle_deg.push_back(theta);
        spec.power.push_back(p);
        bool better = p > best_power ||
                      (p == best_power && std::abs(theta) < std::abs(best_angle));
        if (better) {
            best_power = p;
            best_angle = theta;
        }
    }
    spec.peak_deg = best_angle;
    return spec;
}

Eigen::MatrixXcd estimate_phi(const Eigen::MatrixXcd& a_dl, const Eigen::MatrixXcd& a_ul) {
    if (a_dl.rows() != a_ul.rows() || a_dl.cols() != a_ul.cols())
        throw std::invalid_argument("estimate_phi: signature matrices must have equal shape");
    Eigen::MatrixXcd g = a_ul * a_ul.adjoint();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12)
        throw std::runtime_error("estimate_phi: A_ul A_ul^H is rank deficient");

    return a_dl * a_ul.adjoint() * g.inverse();
}

double aod_from_aoa(const Eigen::MatrixXcd& phi, double aoa_deg, const ArrayConfig& cfg,
                    double grid_step_deg) {
    Eigen::VectorXcd sig = phi * steering_vector(aoa_deg, cfg, Link::Ul);
    int n = static_cast<int>(std::round(180.0 / grid_step_deg)) + 1;
    double best = -1.0;
    double best_angle = 0.0;
    for (int i = 0; i < n; ++i) {
        double theta = -90.0 + i * grid_step_deg;
        if (theta > 90.0) theta = 90.0;
        double corr = std::abs(steering_vector(theta, cfg, Link::Dl).dot(sig));
        bool better = corr > best ||
                      (corr == best && std::abs(theta) < std::abs(best_angle));
        if (better) {
            best = corr;
            best_angle = theta;
        }
    }
    return best_angle;
}

RotatedBeam rotate_beam(double phi_dl_deg, double eps_deg, int sign,
                        const ArrayConfig& cfg, double sector_half_deg) {
    if (eps_deg < 0.0) throw std::invalid_argument("rotate_beam: eps must be >= 0");
    double target = phi_dl_deg + (sign >= 0 ? eps_deg : -eps_deg);
    RotatedBeam out;
    out.clamped = false;
    if (target > sector_half_deg) {
        target = sector_half_deg;
        out.clamped = true;
    } else if (target < -sector_half_deg) {
        target = -sector_half_deg;
        out.clamped = true;
    }
    out.angle_deg = target;
    out.vec = steering_vector(target, cfg, Link::Dl);
    return out;
}

}  // namespace acosim
