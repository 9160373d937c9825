#pragma once

// Gridded surface samples shared by the solvers and the verifiers.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bjbi/lorentz.hpp"

namespace bjbi {

enum class DataAxis { u_axis, v_axis, none };

/// One evaluated parameter point with exact partials.
struct SurfaceNode {
    double u = 0.0;
    double v = 0.0;
    int i = 0;  // grid column (u index)
    int j = 0;  // grid row (v index)
    Vec3L X, Xu, Xv, Xuu, Xuv, Xvv;
    Vec3L N;               // unit normal, zero when lightlike
    bool lightlike = false;
};

/// Regular nu x nv lattice over [u0,u1] x [v0,v1]. A count of 1 samples the
/// lower bound only.
struct GridSpec {
    double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
    int nu = 1, nv = 1;

    double u_at(int i) const { return nu > 1 ? u0 + (u1 - u0) * i / (nu - 1) : u0; }
    double v_at(int j) const { return nv > 1 ? v0 + (v1 - v0) * j / (nv - 1) : v0; }
    double du() const { return nu > 1 ? (u1 - u0) / (nu - 1) : 0.0; }
    double dv() const { return nv > 1 ? (v1 - v0) / (nv - 1) : 0.0; }
};

enum class DomainShape { rect, diamond };

/// Surface evaluated on (a subset of) a regular grid. Nodes are stored
/// row-major: v index outer, u index inner. Immutable once built.
struct SurfaceSample {
    GridSpec grid;
    DomainShape shape = DomainShape::rect;
    double diamond_m = 0.0;
    std::vector<SurfaceNode> nodes;
    std::vector<int> node_at;          // nu*nv entries, -1 where absent
    std::vector<SurfaceNode> axis;     // data-axis trace (Björling samples only)
    DataAxis data_axis = DataAxis::none;
    bool exact_partials = true;        // false when partials came from finite differences
    bool approx_flag = false;
    int normal_sign = 1;
    std::string origin;

    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }
    const SurfaceNode* at(int i, int j) const;
    void rebuild_index();
};

/// Fills N and the lightlike flag from X_u x X_v (before any sign choice).
void assign_normal(SurfaceNode& node);

/// Lower-left-diagonal triangulation of every complete grid cell, as node
/// index triples with consistent winding.
std::vector<std::array<std::size_t, 3>> triangulate(const SurfaceSample& s);

/// Largest Euclidean norm of any position, at least 1.
double position_scale(const SurfaceSample& s);

}  // namespace bjbi
