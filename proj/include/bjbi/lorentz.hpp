#pragma once

// Lorentz-Minkowski 3-space: ds^2 = dx^2 + dy^2 - dz^2, z timelike.

#include <array>
#include <cmath>
#include <string_view>

namespace bjbi {

struct Vec3L {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3L operator+(Vec3L a, Vec3L b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3L operator-(Vec3L a, Vec3L b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3L operator-(Vec3L a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3L operator*(double s, Vec3L a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3L operator*(Vec3L a, double s) { return s * a; }
    friend constexpr Vec3L operator/(Vec3L a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    friend constexpr bool operator==(Vec3L, Vec3L) = default;

    constexpr double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
};

enum class Causal { spacelike, timelike, lightlike };

std::string_view to_string(Causal c) noexcept;

constexpr double minkowski_inner(Vec3L a, Vec3L b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

constexpr double euclid_dot(Vec3L a, Vec3L b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double euclid_norm(Vec3L a) { return std::sqrt(euclid_dot(a, a)); }

/// Componentwise Lorentzian cross product, generic so that polynomial
/// components share the exact same convention: <a x b, w> = det(a, b, w).
template <class T>
std::array<T, 3> lorentz_cross_components(const T& ax, const T& ay, const T& az,
                                          const T& bx, const T& by, const T& bz) {
    return {ay * bz - az * by, az * bx - ax * bz, ay * bx - ax * by};
}

inline Vec3L lorentz_cross(Vec3L a, Vec3L b) {
    auto c = lorentz_cross_components(a.x, a.y, a.z, b.x, b.y, b.z);
    return {c[0], c[1], c[2]};
}

constexpr double det3(Vec3L a, Vec3L b, Vec3L c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x);
}

/// Scale-aware lightlike threshold 1e-10 * (1 + |v|^2_euclid).
inline double default_causal_tol(Vec3L v) { return 1e-10 * (1.0 + euclid_dot(v, v)); }

Causal causal_character(Vec3L v, double tol);
inline Causal causal_character(Vec3L v) { return causal_character(v, default_causal_tol(v)); }

/// v / sqrt|<v,v>|. Throws LightlikeVector when |<v,v>| <= tol.
Vec3L unit_normalize(Vec3L v, double tol);
inline Vec3L unit_normalize(Vec3L v) { return unit_normalize(v, default_causal_tol(v)); }

/// Orthonormal frame adapted to a timelike plane: b1 is the unit spacelike
/// normal, b2 spacelike and b3 timelike span the plane.
class TimelikePlane {
public:
    static constexpr double kTol = 1e-10;

    /// Throws std::invalid_argument when the frame is not orthonormal.
    TimelikePlane(Vec3L b1, Vec3L b2, Vec3L b3);

    /// Plane with spacelike normal (cosh e cos t, cosh e sin t, sinh e).
    static TimelikePlane from_angles(double boost, double rotation);
    /// The y-z plane: b1 = e1, b2 = e2, b3 = e3.
    static TimelikePlane yz() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

    Vec3L b1() const { return b1_; }
    Vec3L b2() const { return b2_; }
    Vec3L b3() const { return b3_; }

    /// In-plane coordinates (x2, x3) and height psi with X = psi b1 + x2 b2 + x3 b3.
    double x2(Vec3L p) const { return minkowski_inner(p, b2_); }
    double x3(Vec3L p) const { return -minkowski_inner(p, b3_); }
    double height(Vec3L p) const { return minkowski_inner(p, b1_); }
    Vec3L compose(double x2, double x3, double psi) const { return psi * b1_ + x2 * b2_ + x3 * b3_; }

private:
    Vec3L b1_, b2_, b3_;
};

}  // namespace bjbi
