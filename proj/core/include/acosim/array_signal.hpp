#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace acosim {

// Uniform linear array shared by UL estimation and DL steering.
struct ArrayConfig {
    int m{4};                 // element count
    double spacing_wl{0.5};   // element spacing in reference wavelengths
    double f_ul_hz{1.92e9};
    double f_dl_hz{2.11e9};
    double f0_hz{2.0e9};      // reference frequency

    void validate() const;  // throws std::invalid_argument
};

enum class Link { Ul, Dl };

// Element k carries phase -2*pi*spacing*(f_link/f0)*k*sin(theta); element 0 is 1.
Eigen::VectorXcd steering_vector(double theta_deg, const ArrayConfig& cfg, Link link);

// Diagonal of T(theta) with entry k = exp(+j*2*pi*spacing*((f_ul-f_dl)/f0)*k*sin(theta)).
// By construction diag(T) .* a_ul == a_dl exactly.
Eigen::VectorXcd fdd_transform_diag(double theta_deg, const ArrayConfig& cfg);

// N array snapshots and their sample covariance.
struct SnapshotSet {
    Eigen::MatrixXcd x;    // M x N
    Eigen::MatrixXcd rxx;  // M x M, (1/N) * x * x^H

    static SnapshotSet from_snapshots(Eigen::MatrixXcd snapshots);
};

struct SpatialSpectrum {
    std::vector<double> angle_deg;
    std::vector<double> power;  // linear, > 0 where the loaded covariance is PD
    double peak_deg{0.0};
};

// Capon spatial spectrum P(theta) = 1 / (a^H (Rxx + loading I)^-1 a) over a
// uniform grid on [-90, 90]. Ties at the peak break toward smaller |theta|.
// Default loading is 1e-6 * trace(Rxx) / M. Throws std::runtime_error when the
// loaded covariance is not invertible.
SpatialSpectrum capon_estimate(const SnapshotSet& snapshots, const ArrayConfig& cfg,
                               double grid_step_deg = 0.5,
                               std::optional<double> diagonal_loading = std::nullopt);

// Least-squares UL->DL signature transform: phi = A_dl A_ul^H (A_ul A_ul^H)^-1.
// Throws std::runtime_error when A_ul A_ul^H is rank deficient
// (condition estimate above 1e12).
Eigen::MatrixXcd estimate_phi(const Eigen::MatrixXcd& a_dl, const Eigen::MatrixXcd& a_ul);

// Map an UL angle estimate to a DL departure angle by applying phi to the UL
// signature and re-running the grid argmax against DL steering vectors.
double aod_from_aoa(const Eigen::MatrixXcd& phi, double aoa_deg, const ArrayConfig& cfg,
                    double grid_step_deg = 0.5);

struct RotatedBeam {
    Eigen::VectorXcd vec;
    double angle_deg{0.0};
    bool clamped{false};
};

// DL steering vector at phi_dl + sign*eps, clamped to the sector edge.
// eps == 0 reproduces steering_vector(phi_dl, cfg, Dl).
RotatedBeam rotate_beam(double phi_dl_deg, double eps_deg, int sign,
                        const ArrayConfig& cfg, double sector_half_deg = 60.0);

}  // namespace acosim
