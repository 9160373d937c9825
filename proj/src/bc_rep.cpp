#include "bjbi/bc_rep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bjbi/errors.hpp"
#include "bjbi/geometry_verify.hpp"
#include "toml_lite.hpp"

namespace bjbi {

namespace {

const RealPoly kT = RealPoly::monomial(1);

/// Direction of X_r per unit F'(r), and its r-derivative.
Vec3L r_direction(double r) { return {r, 0.5 * (1 - r * r), -0.5 * (1 + r * r)}; }
Vec3L r_direction_d(double r) { return {1.0, -r, -r}; }
/// Direction of X_s per unit G'(s), and its s-derivative.
Vec3L s_direction(double s) { return {s, 0.5 * (1 - s * s), 0.5 * (1 + s * s)}; }
Vec3L s_direction_d(double s) { return {1.0, -s, s}; }

}  // namespace

BCPrimitives bc_primitives(const BCData& d) {
    BCPrimitives p;
    p.dF = d.F.derive();
    p.ddF = p.dF.derive();
    p.dG = d.G.derive();
    p.ddG = p.dG.derive();
    p.A = (kT * p.dF).antiderive_from(0.0);
    p.B = (kT * kT * p.dF).antiderive_from(0.0);
    p.C = (kT * p.dG).antiderive_from(0.0);
    p.D = (kT * kT * p.dG).antiderive_from(0.0);
    return p;
}

namespace {

Vec3L point_from(const BCData& d, const BCPrimitives& p, double r, double s) {
    const double F = d.F(r), G = d.G(s), A = p.A(r), B = p.B(r), C = p.C(s), D = p.D(s);
    return {A + C, 0.5 * (F - D + G - B), 0.5 * (G - B - F + D)};
}

}  // namespace

Vec3L bc_point(const BCData& d, double r, double s) { return point_from(d, bc_primitives(d), r, s); }

SurfaceNode bc_node(const BCData& d, const BCPrimitives& p, double r, double s) {
    SurfaceNode n;
    n.u = r;
    n.v = s;
    n.X = point_from(d, p, r, s);
    const double f1 = p.dF(r), f2 = p.ddF(r), g1 = p.dG(s), g2 = p.ddG(s);
    n.Xu = f1 * r_direction(r);
    n.Xv = g1 * s_direction(s);
    n.Xuu = f2 * r_direction(r) + f1 * r_direction_d(r);
    n.Xuv = {};
    n.Xvv = g2 * s_direction(s) + g1 * s_direction_d(s);
    assign_normal(n);
    return n;
}

SurfaceSample bc_surface(const BCData& d) {
    if (d.nr < 1 || d.ns < 1 || !(d.r0 <= d.r1) || !(d.s0 <= d.s1))
        throw std::invalid_argument("B-C grid is empty");
    const BCPrimitives p = bc_primitives(d);
    SurfaceSample s;
    s.grid = {d.r0, d.r1, d.s0, d.s1, d.nr, d.ns};
    s.shape = DomainShape::rect;
    s.data_axis = DataAxis::none;
    s.origin = "bc";
    for (int j = 0; j < d.ns; ++j)
        for (int i = 0; i < d.nr; ++i) {
            SurfaceNode n = bc_node(d, p, s.grid.u_at(i), s.grid.v_at(j));
            n.i = i;
            n.j = j;
            s.nodes.push_back(n);
        }
    s.rebuild_index();
    return s;
}

Vec3L bc_normal(const BCData& d, double r, double s) {
    const double f1 = d.F.derive()(r), g1 = d.G.derive()(s);
    if (f1 == 0.0 || g1 == 0.0) throw DegeneratePoint("F'(r) G'(s) = 0: the tangent plane degenerates");
    // X_r = F'(r) r_dir and X_s = G'(s) s_dir, so only the sign of F'G' reaches the unit normal.
    const double sign = (f1 > 0) == (g1 > 0) ? 1.0 : -1.0;
    try {
        return sign * unit_normalize(lorentz_cross(r_direction(r), s_direction(s)));
    } catch (const LightlikeVector&) {
        throw DegeneratePoint("normal is lightlike at this (r, s) (1 + rs = 0)");
    }
}

Vec3L printed_normal(double r, double s) {
    const double q = 1.0 + r * s;
    return {(r + s) / q, (r - s) / q, (r * s - 1.0) / q};
}

LightlikePair bc_lightlike_decomposition(const BCData& d) {
    const BCPrimitives p = bc_primitives(d);
    if (p.dF.is_zero()) throw DegenerateGenerator("F' vanishes identically");
    if (p.dG.is_zero()) throw DegenerateGenerator("G' vanishes identically");
    LightlikePair out;
    out.psi = CurveL3::polynomial(2.0 * p.A, d.F - p.B, -d.F - p.B);
    out.phi = CurveL3::polynomial(2.0 * p.C, d.G - p.D, d.G + p.D);
    return out;
}

double lightlike_defect(const CurveL3& c) {
    const CurveL3 dc = c.derivative();
    return lorentz_inner(dc, dc).max_abs_coeff();
}

// ---------------------------------------------------------------------------
// File format

BCData parse_bc(const std::string& text) {
    const auto doc = toml_lite::parse(text);
    const auto& root = doc.table("");
    BCData d;
    d.F = RealPoly(toml_lite::get_array(root, "F", "bc"));
    d.G = RealPoly(toml_lite::get_array(root, "G", "bc"));
    if (toml_lite::find(root, "domain")) {
        const auto dom = toml_lite::get_array(root, "domain", "bc");
        if (dom.size() != 4) throw ParseError("bc: domain must be [r0, r1, s0, s1]");
        if (!(dom[0] <= dom[1]) || !(dom[2] <= dom[3])) throw ParseError("bc: domain bounds are reversed");
        d.r0 = dom[0];
        d.r1 = dom[1];
        d.s0 = dom[2];
        d.s1 = dom[3];
    }
    if (toml_lite::find(root, "grid")) {
        const auto g = toml_lite::get_array(root, "grid", "bc");
        if (g.size() != 2) throw ParseError("bc: grid must be [nr, ns]");
        for (double x : g)
            if (!(x >= 1.0) || x != std::floor(x) || x > 1e6) throw ParseError("bc: grid counts must be positive integers");
        d.nr = static_cast<int>(g[0]);
        d.ns = static_cast<int>(g[1]);
    }
    return d;
}

BCData load_bc(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("B-C file not found: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bc(ss.str());
}

std::string bc_to_toml(const BCData& d) {
    auto arr = [](const RealPoly& p) {
        const auto cs = p.coeffs();
        return toml_lite::format_array(cs.empty() ? std::vector<double>{0.0} : std::vector<double>(cs.begin(), cs.end()));
    };
    std::ostringstream o;
    o << "F = " << arr(d.F) << "\n";
    o << "G = " << arr(d.G) << "\n";
    o << "domain = " << toml_lite::format_array({d.r0, d.r1, d.s0, d.s1}) << "\n";
    o << "grid = [" << d.nr << ", " << d.ns << "]\n";
    return o.str();
}

// ---------------------------------------------------------------------------
// Diagnostics

BCDiagnostics bc_diagnostics(const BCData& d, const SurfaceSample& sample) {
    BCDiagnostics out;
    const LightlikePair pair = bc_lightlike_decomposition(d);
    out.psi_defect = lightlike_defect(pair.psi);
    out.phi_defect = lightlike_defect(pair.phi);

    BCData ref;
    ref.F = kT;
    ref.G = kT;
    for (const auto& n : sample.nodes) {
        const Vec3L rec = 0.5 * (pair.psi(n.u) + pair.phi(n.v));
        out.reconstruction_error = std::max(out.reconstruction_error, euclid_norm(n.X - rec));
        if (n.lightlike) {
            ++out.lightlike_nodes;
            continue;
        }
        try {
            const Vec3L a = bc_normal(d, n.u, n.v), b = bc_normal(ref, n.u, n.v);
            out.normal_independence = std::max(out.normal_independence, std::min(euclid_norm(a - b), euclid_norm(a + b)));
            ++out.normal_points;
        } catch (const DegeneratePoint&) {
        }
    }

    const MinimalityStats h = minimality(fundamental_forms(sample));
    out.max_abs_h = h.max_abs_h;
    out.max_rel_h = h.max_rel_h;

    const CurvatureField K = gauss_curvature_graph(graph_jets(sample, TimelikePlane::yz()));
    for (std::size_t k = 0; k < K.K.size(); ++k)
        if (K.flagged[k] || std::abs(K.K[k]) <= kFlatCurvatureTol) out.flat_nodes.push_back(k);
    return out;
}

}  // namespace bjbi
