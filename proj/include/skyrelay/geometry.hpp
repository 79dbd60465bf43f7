#pragma once

#include <cmath>

namespace skyrelay {

/// 3D point. x, y, z are all in kilometers; helpers convert where the
/// channel models want meters.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double z_m() const { return z * 1000.0; }

    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline double norm_km(const Vec3& v) {
    return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

inline double dist3d_km(const Vec3& a, const Vec3& b) { return norm_km(a - b); }

inline double dist3d_m(const Vec3& a, const Vec3& b) { return dist3d_km(a, b) * 1000.0; }

inline double dist2d_km(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double dist2d_m(const Vec3& a, const Vec3& b) { return dist2d_km(a, b) * 1000.0; }

/// Axis-aligned rectangle in the xy plane, km.
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area_km2() const { return width() * height(); }
    bool empty() const { return x1 <= x0 || y1 <= y0; }
    bool contains(double x, double y, double tol = 1e-9) const {
        return x >= x0 - tol && x <= x1 + tol && y >= y0 - tol && y <= y1 + tol;
    }
    /// Grown by a margin on every side.
    Rect expanded(double margin) const { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }

    friend bool operator==(const Rect& a, const Rect& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle in degrees to (-180, 180].
inline double wrap_deg(double deg) {
    double a = std::fmod(deg, 360.0);
    if (a <= -180.0) a += 360.0;
    if (a > 180.0) a -= 360.0;
    return a;
}

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace skyrelay
