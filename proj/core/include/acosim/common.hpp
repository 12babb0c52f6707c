#pragma once

#include <cmath>
#include <numbers>

namespace acosim {

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wrap an angle to [-180, 180).
inline double wrap_deg(double a) {
    a = std::fmod(a + 180.0, 360.0);
    if (a < 0.0) a += 360.0;
    return a - 180.0;
}

// Wrap an angle to [0, 360).
inline double wrap_deg_360(double a) {
    a = std::fmod(a, 360.0);
    if (a < 0.0) a += 360.0;
    return a;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// dBm <-> mW share the same scale.
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

struct Vec2 {
    double x{0.0};
    double y{0.0};

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
    // Azimuth of this displacement in degrees, [0, 360), x axis = 0, CCW.
    double azimuth_deg() const { return wrap_deg_360(rad2deg(std::atan2(y, x))); }
};

inline Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

}  // namespace acosim
