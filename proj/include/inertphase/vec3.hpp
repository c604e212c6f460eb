#pragma once

#include <cmath>

namespace inertphase {

// Plain 3-vector. Units are carried by context: tesla for fields, m/s for
// velocities, A·m² (= J/T) for moments, T·m for vector potentials.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

constexpr Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

constexpr double norm2(const Vec3& u) { return dot(u, u); }
inline double norm(const Vec3& u) { return std::sqrt(norm2(u)); }

inline bool is_finite(const Vec3& u) {
    return std::isfinite(u.x) && std::isfinite(u.y) && std::isfinite(u.z);
}

inline bool is_unit(const Vec3& u, double tol = 1e-12) { return std::abs(norm(u) - 1.0) <= tol; }

inline constexpr Vec3 unit_z{0.0, 0.0, 1.0};

}  // namespace inertphase
