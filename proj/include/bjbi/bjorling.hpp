#pragma once

// Björling solver: X = Re{ c(z) + kappa * integral_{t0}^{z} n(w) x c'(w) dw }
// with kappa = k' (timelike surfaces, split-complex z) or i (spacelike
// surfaces, complex z).

#include "bjbi/strips.hpp"
#include "bjbi/surface.hpp"

namespace bjbi {

enum class ScalarKind { split, complex };

/// Components of F(z) = c(z) + kappa * integral(z), with the derivative
/// curves needed for exact first and second partials.
struct HolomorphicData {
    CurveL3 c, dc, ddc;
    CurveL3 integral;    // vanishes at interval.t0
    CurveL3 integrand;   // n x c'
    CurveL3 dintegrand;
    CurveL3 n;
    ScalarKind kind = ScalarKind::split;
    DataAxis data_axis = DataAxis::u_axis;
    Interval interval;
    bool approx = false;
};

HolomorphicData build_holomorphic_data(const Strip& s);

/// Position and exact partials at one parameter point. The normal is
/// computed but not sign-aligned.
SurfaceNode evaluate_node(const HolomorphicData& h, double u, double v);

/// Parameter point on the data axis where the surface passes through c(t).
inline std::pair<double, double> axis_point(DataAxis axis, double t) {
    return axis == DataAxis::v_axis ? std::pair{0.0, t} : std::pair{t, 0.0};
}

/// Sampling domain: a rectangle or the diamond |u| + |v| <= M (sampled on
/// the grid of its bounding square). Both are convex.
struct Domain {
    DomainShape shape = DomainShape::rect;
    double u0 = -1, u1 = 1, v0 = -1, v1 = 1;
    double m = 0.0;
    int nu = 41, nv = 41;

    static Domain rect(double u0, double u1, double v0, double v1, int nu, int nv);
    static Domain diamond(double m, int nu, int nv);

    GridSpec grid() const { return {u0, u1, v0, v1, nu, nv}; }
    bool contains(double u, double v) const;
};

inline constexpr int kDefaultAxisSamples = 101;

/// Samples the Björling solution on `d`, plus `axis_samples` points of the
/// data axis over the strip interval. Normals are oriented so that they
/// agree with n at the interval midpoint. Throws DegenerateEverywhere when
/// every grid node has a lightlike normal.
SurfaceSample solve(const HolomorphicData& h, const Domain& d, int axis_samples = kDefaultAxisSamples);
SurfaceSample solve(const Strip& s, const Domain& d, int axis_samples = kDefaultAxisSamples);

/// Keeps the nodes with |u| + |v| <= M. Throws EmptyRestriction if none remain.
SurfaceSample restrict_to_diamond(const SurfaceSample& sample, double m);

}  // namespace bjbi
