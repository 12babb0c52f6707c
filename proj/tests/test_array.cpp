#include <doctest.h>

#include <cmath>
#include <random>

#include "acosim/array_signal.hpp"
#include "acosim/common.hpp"

using namespace acosim;

namespace {

ArrayConfig cfg4() { return ArrayConfig{4, 0.5, 1.92e9, 2.11e9, 2.0e9}; }

// Snapshots for point sources at the given angles plus white noise.
Eigen::MatrixXcd make_snapshots(const ArrayConfig& cfg,
                                const std::vector<double>& angles_deg, int n,
                                double snr_db, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double nsigma = std::sqrt(0.5 * std::pow(10.0, -snr_db / 10.0));
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cfg.m, n);
    for (double ang : angles_deg) {
        Eigen::VectorXcd a = steering_vector(ang, cfg, Link::Ul);
        for (int j = 0; j < n; ++j) {
            std::complex<double> s(gauss(rng) / std::sqrt(2.0),
                                   gauss(rng) / std::sqrt(2.0));
            x.col(j) += a * s;
        }
    }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < cfg.m; ++i)
            x(i, j) += std::complex<double>(nsigma * gauss(rng), nsigma * gauss(rng));
    return x;
}

// Independent spectrum scan: explicit Gaussian elimination per grid point,
// no shared code with the production estimator.
double oracle_capon_peak(const Eigen::MatrixXcd& rxx, const ArrayConfig& cfg,
                         double step, double loading) {
    int m = static_cast<int>(rxx.rows());
    Eigen::MatrixXcd r = rxx + loading * Eigen::MatrixXcd::Identity(m, m);
    double best = -1.0, best_angle = 0.0;
    for (double theta = -90.0; theta <= 90.0 + 1e-12; theta += step) {
        Eigen::VectorXcd a = steering_vector(theta, cfg, Link::Ul);
        // Solve r y = a by hand.
        Eigen::MatrixXcd aug = r;
        Eigen::VectorXcd y = a;
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int row = col + 1; row < m; ++row)
                if (std::abs(aug(row, col)) > std::abs(aug(piv, col))) piv = row;
            aug.row(col).swap(aug.row(piv));
            std::swap(y(col), y(piv));
            for (int row = col + 1; row < m; ++row) {
                std::complex<double> f = aug(row, col) / aug(col, col);
                aug.row(row) -= f * aug.row(col);
                y(row) -= f * y(col);
            }
        }
        for (int col = m - 1; col >= 0; --col) {
            for (int row = col + 1; row < m; ++row) y(col) -= aug(col, row) * y(row);
            y(col) /= aug(col, col);
        }
        double denom = (a.adjoint() * y)(0).real();
        double p = 1.0 / denom;
        if (p > best || (p == best && std::abs(theta) < std::abs(best_angle))) {
            best = p;
            best_angle = theta;
        }
    }
    return best_angle;
}

double frob_residual(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& a_ul,
                     const Eigen::MatrixXcd& a_dl) {
    return (phi * a_ul - a_dl).norm();
}

}  // namespace

TEST_CASE("steering vector basics") {
    ArrayConfig cfg = cfg4();
    auto a0 = steering_vector(0.0, cfg, Link::Ul);
    for (int k = 0; k < cfg.m; ++k) CHECK(a0(k) == std::complex<double>(1.0, 0.0));

    ArrayConfig c2{2, 0.5, 2.0e9, 2.0e9, 2.0e9};
    auto a90 = steering_vector(90.0, c2, Link::Ul);
    CHECK(a90(0).real() == doctest::Approx(1.0));
    CHECK(a90(1).real() == doctest::Approx(-1.0));
    CHECK(a90(1).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("steering vectors are unit modulus everywhere") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> theta(-90.0, 90.0), f(0.5e9, 6.0e9),
        sp(0.1, 2.0);
    for (int i = 0; i < 1000; ++i) {
        ArrayConfig cfg{2 + static_cast<int>(rng() % 7), sp(rng), f(rng), f(rng), f(rng)};
        auto a = steering_vector(theta(rng), cfg, rng() % 2 ? Link::Ul : Link::Dl);
        CHECK(a(0) == std::complex<double>(1.0, 0.0));
        for (int k = 0; k < cfg.m; ++k)
            CHECK(std::abs(a(k)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fdd transform is the exact bridge between the two links") {
    ArrayConfig cfg = cfg4();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> theta(-90.0, 90.0), f(0.5e9, 6.0e9),
        sp(0.1, 2.0);
    for (int i = 0; i < 1000; ++i) {
        ArrayConfig c{2 + static_cast<int>(rng() % 7), sp(rng), f(rng), f(rng), f(rng)};
        double t = theta(rng);
        Eigen::VectorXcd lhs =
            fdd_transform_diag(t, c).cwiseProduct(steering_vector(t, c, Link::Ul));
        CHECK((lhs - steering_vector(t, c, Link::Dl)).norm() < 1e-10);
    }

    // Identity cases.
    ArrayConfig same = cfg;
    same.f_dl_hz = same.f_ul_hz;
    auto t_same = fdd_transform_diag(33.0, same);
    auto t_zero = fdd_transform_diag(0.0, cfg);
    for (int k = 0; k < cfg.m; ++k) {
        CHECK(std::abs(t_same(k) - 1.0) < 1e-15);
        CHECK(std::abs(t_zero(k) - 1.0) < 1e-15);
    }

    // Direct phase value: spacing 0.5, gap ratio 0.1, theta 30.
    ArrayConfig c2{2, 0.5, 2.2e9, 2.0e9, 2.0e9};
    auto t = fdd_transform_diag(30.0, c2);
    CHECK(std::arg(t(1)) == doctest::Approx(2.0 * kPi * 0.5 * 0.1 * 0.5));
}

TEST_CASE("covariance estimator matches the brute-force sum") {
    ArrayConfig cfg = cfg4();
    auto x = make_snapshots(cfg, {15.0}, 32, 10.0, 99);
    auto set = SnapshotSet::from_snapshots(x);
    Eigen::MatrixXcd brute = Eigen::MatrixXcd::Zero(cfg.m, cfg.m);
    for (int j = 0; j < x.cols(); ++j) brute += x.col(j) * x.col(j).adjoint();
    brute /= static_cast<double>(x.cols());
    CHECK((set.rxx - brute).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((set.rxx - set.rxx.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("capon finds a boresight source exactly") {
    ArrayConfig cfg = cfg4();
    Eigen::VectorXcd a = steering_vector(0.0, cfg, Link::Ul);
    Eigen::MatrixXcd x(cfg.m, 16);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 16; ++j)
        x.col(j) = a * std::complex<double>(gauss(rng), gauss(rng));
    auto spec = capon_estimate(SnapshotSet::from_snapshots(x), cfg, 0.5);
    CHECK(spec.peak_deg == 0.0);
}

TEST_CASE("capon matches the grid-scan oracle and localizes a 20 deg source") {
    ArrayConfig cfg = cfg4();
    auto x = make_snapshots(cfg, {20.0}, 64, 20.0, 41);
    auto set = SnapshotSet::from_snapshots(x);
    auto spec = capon_estimate(set, cfg, 0.5);
    CHECK(std::abs(spec.peak_deg - 20.0) <= 0.5);

    double loading = 1e-6 * set.rxx.trace().real() / cfg.m;
    CHECK(spec.peak_deg ==
          doctest::Approx(oracle_capon_peak(set.rxx, cfg, 0.5, loading)));
}

TEST_CASE("capon resolves two symmetric sources with eight elements") {
    ArrayConfig cfg{8, 0.5, 1.92e9, 2.11e9, 2.0e9};
    auto x = make_snapshots(cfg, {-30.0, 30.0}, 256, 20.0, 77);
    auto spec = capon_estimate(SnapshotSet::from_snapshots(x), cfg, 0.5);
    // Local maxima near both sources.
    auto near_peak = [&](double target) {
        for (std::size_t i = 1; i + 1 < spec.power.size(); ++i) {
            if (spec.power[i] > spec.power[i - 1] && spec.power[i] > spec.power[i + 1] &&
                std::abs(spec.angle_deg[i] - target) <= 1.0)
                return true;
        }
        return false;
    };
    CHECK(near_peak(-30.0));
    CHECK(near_peak(30.0));
}

TEST_CASE("capon spectrum is positive and rejects absurd grids") {
    ArrayConfig cfg = cfg4();
    auto x = make_snapshots(cfg, {10.0}, 64, 15.0, 13);
    auto spec = capon_estimate(SnapshotSet::from_snapshots(x), cfg, 1.0);
    for (double p : spec.power) CHECK(p > 0.0);
    CHECK_THROWS_AS(
        capon_estimate(SnapshotSet::from_snapshots(x), cfg, 0.0),
        std::invalid_argument);
}

TEST_CASE("phi recovers identity, scaling, and a random mixing matrix") {
    ArrayConfig cfg = cfg4();
    std::mt19937_64 rng(123);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randn = [&](int r, int c) {
        Eigen::MatrixXcd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        return m;
    };

    Eigen::MatrixXcd a = randn(4, 4);
    CHECK((estimate_phi(a, a) - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-10);
    CHECK((estimate_phi(2.0 * a, a) - 2.0 * Eigen::MatrixXcd::Identity(4, 4)).norm() <
          1e-10);

    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXcd a_ul = randn(4, 8);
        Eigen::MatrixXcd g = randn(4, 4);
        Eigen::MatrixXcd phi = estimate_phi(g * a_ul, a_ul);
        CHECK((phi - g).norm() < 1e-8);
    }

    // Rank-deficient A_ul.
    Eigen::MatrixXcd thin = Eigen::MatrixXcd::Zero(4, 8);
    thin.row(0) = randn(1, 8);
    CHECK_THROWS_AS(estimate_phi(thin, thin), std::runtime_error);
}

TEST_CASE("phi is the least-squares optimum: perturbations never improve it") {
    ArrayConfig cfg = cfg4();
    std::mt19937_64 rng(321);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randn = [&](int r, int c) {
        Eigen::MatrixXcd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        return m;
    };
    Eigen::MatrixXcd a_ul = randn(4, 12);
    Eigen::MatrixXcd a_dl = randn(4, 12);  // generic, non-recoverable pair
    Eigen::MatrixXcd phi = estimate_phi(a_dl, a_ul);
    double base = frob_residual(phi, a_ul, a_dl);
    for (int i = 0; i < 100; ++i) {
        Eigen::MatrixXcd delta = 1e-3 * randn(4, 4);
        CHECK(frob_residual(phi + delta, a_ul, a_dl) >= base - 1e-12);
    }
}

TEST_CASE("aod mapping through phi reproduces the angle on the grid") {
    ArrayConfig cfg = cfg4();
    std::vector<double> cal;
    for (double a = -60.0; a <= 60.0; a += 15.0) cal.push_back(a);
    Eigen::MatrixXcd a_ul(cfg.m, static_cast<Eigen::Index>(cal.size()));
    Eigen::MatrixXcd a_dl(cfg.m, static_cast<Eigen::Index>(cal.size()));
    for (std::size_t i = 0; i < cal.size(); ++i) {
        a_ul.col(static_cast<Eigen::Index>(i)) = steering_vector(cal[i], cfg, Link::Ul);
        a_dl.col(static_cast<Eigen::Index>(i)) = steering_vector(cal[i], cfg, Link::Dl);
    }
    Eigen::MatrixXcd phi = estimate_phi(a_dl, a_ul);
    for (double ang : {-45.0, -10.0, 0.0, 22.5, 57.0})
        CHECK(std::abs(aod_from_aoa(phi, ang, cfg, 0.5) - ang) <= 1.0);
}

TEST_CASE("beam rotation steers, clamps, and degenerates to plain steering") {
    ArrayConfig cfg = cfg4();
    auto zero = rotate_beam(10.0, 0.0, +1, cfg);
    CHECK_FALSE(zero.clamped);
    CHECK((zero.vec - steering_vector(10.0, cfg, Link::Dl)).norm() == 0.0);

    auto plus = rotate_beam(10.0, 15.0, +1, cfg);
    CHECK(plus.angle_deg == doctest::Approx(25.0));
    CHECK((plus.vec - steering_vector(25.0, cfg, Link::Dl)).norm() < 1e-15);

    auto clamped = rotate_beam(55.0, 15.0, +1, cfg);
    CHECK(clamped.clamped);
    CHECK(clamped.angle_deg == doctest::Approx(60.0));

    auto minus = rotate_beam(-55.0, 15.0, -1, cfg);
    CHECK(minus.clamped);
    CHECK(minus.angle_deg == doctest::Approx(-60.0));
}
