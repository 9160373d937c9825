#include "bjbi/bjorling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bjbi/errors.hpp"

namespace bjbi {

HolomorphicData build_holomorphic_data(const Strip& s) {
    HolomorphicData h;
    h.dc = s.c().derivative();
    // Put c on the expansion of n x c' so that every component shares one center.
    h.integrand = lorentz_cross(s.n(), h.dc);
    auto [c, integrand] = align(s.c(), h.integrand);
    h.c = c;
    h.dc = c.derivative();
    h.ddc = h.dc.derivative();
    h.integrand = integrand;
    h.dintegrand = integrand.derivative();
    h.integral = integrand.antiderivative_from(s.interval().t0);
    h.n = s.n();
    h.interval = s.interval();
    h.approx = s.approximate();
    if (s.variant() == SurfaceVariant::spacelike_surface) {
        h.kind = ScalarKind::complex;
        h.data_axis = DataAxis::u_axis;
    } else {
        h.kind = ScalarKind::split;
        // w = k'z exchanges the roles of u and v for spacelike curves.
        h.data_axis = s.curve_character() == Causal::spacelike ? DataAxis::v_axis : DataAxis::u_axis;
    }
    return h;
}

namespace {

Vec3L re(const auto& a) { return {a[0].re, a[1].re, a[2].re}; }

template <ScalarAlgebra S>
SurfaceNode evaluate_in(const HolomorphicData& h, double a, double b) {
    const S w{a, b};
    const S unit = S::unit();
    const auto c0 = h.c.eval_extension(w), c1 = h.dc.eval_extension(w), c2 = h.ddc.eval_extension(w);
    const auto i0 = h.integral.eval_extension(w), i1 = h.integrand.eval_extension(w),
               i2 = h.dintegrand.eval_extension(w);
    std::array<S, 3> F0, F1, F2, dbF1, dbF2, dbbF2;
    for (std::size_t k = 0; k < 3; ++k) {
        F0[k] = c0[k] + unit * i0[k];
        F1[k] = c1[k] + unit * i1[k];
        F2[k] = c2[k] + unit * i2[k];
        // d/db acts on a (split-)holomorphic function as multiplication by the unit.
        dbF1[k] = unit * F1[k];
        dbF2[k] = unit * F2[k];
        dbbF2[k] = unit * dbF2[k];
    }
    SurfaceNode n;
    n.X = re(F0);
    n.Xu = re(F1);       // d/da
    n.Xv = re(dbF1);     // d/db
    n.Xuu = re(F2);
    n.Xuv = re(dbF2);
    n.Xvv = re(dbbF2);
    return n;
}

}  // namespace

SurfaceNode evaluate_node(const HolomorphicData& h, double u, double v) {
    const bool swap = h.data_axis == DataAxis::v_axis;
    const double a = swap ? v : u;
    const double b = swap ? u : v;
    SurfaceNode n = h.kind == ScalarKind::split ? evaluate_in<SplitComplex>(h, a, b)
                                                : evaluate_in<ComplexScalar>(h, a, b);
    if (swap) {
        std::swap(n.Xu, n.Xv);
        std::swap(n.Xuu, n.Xvv);
    }
    n.u = u;
    n.v = v;
    assign_normal(n);
    return n;
}

Domain Domain::rect(double u0, double u1, double v0, double v1, int nu, int nv) {
    if (!(u0 <= u1) || !(v0 <= v1) || nu < 1 || nv < 1) throw std::invalid_argument("empty rectangular domain");
    Domain d;
    d.shape = DomainShape::rect;
    d.u0 = u0; d.u1 = u1; d.v0 = v0; d.v1 = v1;
    d.nu = nu; d.nv = nv;
    return d;
}

Domain Domain::diamond(double m, int nu, int nv) {
    if (!(m >= 0) || nu < 1 || nv < 1) throw std::invalid_argument("diamond needs M >= 0 and a nonempty grid");
    Domain d = rect(-m, m, -m, m, nu, nv);
    d.shape = DomainShape::diamond;
    d.m = m;
    return d;
}

namespace {

bool in_diamond(double u, double v, double m) {
    // Relative slack so lattice points exactly on the boundary survive rounding.
    return std::abs(u) + std::abs(v) <= m * (1.0 + 1e-12) + 1e-300;
}

}  // namespace

bool Domain::contains(double u, double v) const {
    if (shape == DomainShape::diamond) return in_diamond(u, v, m);
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
}

SurfaceSample solve(const HolomorphicData& h, const Domain& d, int axis_samples) {
    SurfaceSample s;
    s.grid = d.grid();
    s.shape = d.shape;
    s.diamond_m = d.m;
    s.data_axis = h.data_axis;
    s.approx_flag = h.approx;
    s.origin = "bjorling";
    for (int j = 0; j < s.grid.nv; ++j)
        for (int i = 0; i < s.grid.nu; ++i) {
            const double u = s.grid.u_at(i), v = s.grid.v_at(j);
            if (!d.contains(u, v)) continue;
            SurfaceNode n = evaluate_node(h, u, v);
            n.i = i;
            n.j = j;
            s.nodes.push_back(n);
        }
    if (s.nodes.empty()) throw std::invalid_argument("domain contains no grid nodes");
    s.rebuild_index();

    for (int k = 0; k < axis_samples; ++k) {
        const double t = axis_samples > 1 ? h.interval.t0 + (h.interval.t1 - h.interval.t0) * k / (axis_samples - 1)
                                          : h.interval.mid();
        auto [u, v] = axis_point(h.data_axis, t);
        SurfaceNode n = evaluate_node(h, u, v);
        n.i = n.j = -1;
        s.axis.push_back(n);
    }

    // Orientation: N agrees with n at the interval midpoint.
    auto [um, vm] = axis_point(h.data_axis, h.interval.mid());
    const SurfaceNode mid = evaluate_node(h, um, vm);
    if (mid.lightlike) throw DegeneratePoint("surface normal is lightlike at the strip midpoint");
    s.normal_sign = euclid_dot(mid.N, h.n(h.interval.mid())) >= 0.0 ? 1 : -1;
    if (s.normal_sign < 0) {
        for (auto& n : s.nodes) n.N = -n.N;
        for (auto& n : s.axis) n.N = -n.N;
    }

    if (std::all_of(s.nodes.begin(), s.nodes.end(), [](const SurfaceNode& n) { return n.lightlike; }))
        throw DegenerateEverywhere("surface normal is lightlike at every sampled node");
    return s;
}

SurfaceSample solve(const Strip& s, const Domain& d, int axis_samples) {
    return solve(build_holomorphic_data(s), d, axis_samples);
}

SurfaceSample restrict_to_diamond(const SurfaceSample& sample, double m) {
    if (!(m > 0.0) && m != 0.0) throw std::invalid_argument("diamond size must be nonnegative");
    SurfaceSample out = sample;
    out.nodes.clear();
    for (const auto& n : sample.nodes)
        if (in_diamond(n.u, n.v, m)) out.nodes.push_back(n);
    if (out.nodes.empty()) throw EmptyRestriction("no sampled node lies in the diamond |u|+|v| <= M");
    if (out.nodes.size() != sample.nodes.size()) {
        out.shape = DomainShape::diamond;
        out.diamond_m = m;
    }
    out.rebuild_index();
    return out;
}

}  // namespace bjbi
