#include "bjbi/lorentz.hpp"

#include <stdexcept>

#include "bjbi/errors.hpp"

namespace bjbi {

std::string_view to_string(Causal c) noexcept {
    switch (c) {
        case Causal::spacelike: return "spacelike";
        case Causal::timelike: return "timelike";
        case Causal::lightlike: return "lightlike";
    }
    return "unknown";
}

Causal causal_character(Vec3L v, double tol) {
    double q = minkowski_inner(v, v);
    if (q > tol) return Causal::spacelike;
    if (q < -tol) return Causal::timelike;
    return Causal::lightlike;
}

Vec3L unit_normalize(Vec3L v, double tol) {
    double q = minkowski_inner(v, v);
    if (std::abs(q) <= tol) throw LightlikeVector("cannot normalize a lightlike vector");
    return v / std::sqrt(std::abs(q));
}

TimelikePlane::TimelikePlane(Vec3L b1, Vec3L b2, Vec3L b3) : b1_(b1), b2_(b2), b3_(b3) {
    auto near = [](double a, double b) { return std::abs(a - b) <= kTol; };
    if (!near(minkowski_inner(b1, b1), 1.0) || !near(minkowski_inner(b2, b2), 1.0) ||
        !near(minkowski_inner(b3, b3), -1.0) || !near(minkowski_inner(b1, b2), 0.0) ||
        !near(minkowski_inner(b1, b3), 0.0) || !near(minkowski_inner(b2, b3), 0.0))
        throw std::invalid_argument("timelike plane frame is not Lorentz-orthonormal");
}

TimelikePlane TimelikePlane::from_angles(double boost, double rotation) {
    const double ch = std::cosh(boost), sh = std::sinh(boost);
    const double c = std::cos(rotation), s = std::sin(rotation);
    return {{ch * c, ch * s, sh}, {-s, c, 0.0}, {sh * c, sh * s, ch}};
}

}  // namespace bjbi
