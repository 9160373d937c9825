#pragma once

// Barbishov-Chernikov surfaces generated by two scalar polynomials F(r), G(s),
// and their decomposition into two lightlike curves.

#include <filesystem>
#include <string>
#include <vector>

#include "bjbi/lorentz.hpp"
#include "bjbi/split_scalar.hpp"
#include "bjbi/strips.hpp"
#include "bjbi/surface.hpp"

namespace bjbi {

struct BCData {
    RealPoly F, G;
    double r0 = -1, r1 = 1, s0 = -1, s1 = 1;
    int nr = 41, ns = 41;
};

/// The antiderivatives A = int r F', B = int r^2 F', C = int s G',
/// D = int s^2 G', all vanishing at 0.
struct BCPrimitives {
    RealPoly dF, ddF, dG, ddG, A, B, C, D;
};

BCPrimitives bc_primitives(const BCData& d);

/// x = A + C, y = (F - D + G - B)/2, z = (G - B - F + D)/2.
Vec3L bc_point(const BCData& d, double r, double s);

/// Node with exact first and second partials (u = r, v = s); X_rs = 0.
SurfaceNode bc_node(const BCData& d, const BCPrimitives& p, double r, double s);

/// Samples the surface on the (r, s) grid. Lightlike-normal nodes are
/// flagged, not rejected. Throws invalid_argument on an empty grid.
SurfaceSample bc_surface(const BCData& d);

/// Unit normal from X_r x X_s; depends only on (r, s) up to sign. Throws
/// DegeneratePoint when F'(r) G'(s) = 0 or the cross product is lightlike
/// (the locus 1 + rs = 0).
Vec3L bc_normal(const BCData& d, double r, double s);

/// ((r+s)/(1+rs), (r-s)/(1+rs), (rs-1)/(1+rs)), the normal as usually printed
/// for this representation; reported for comparison only. It is not
/// orthogonal to the tangents under the convention used here.
Vec3L printed_normal(double r, double s);

struct LightlikePair {
    CurveL3 psi;  // parameter r
    CurveL3 phi;  // parameter s
};

/// psi = (2A, F - B, -F - B), phi = (2C, G - D, G + D), so X = (psi + phi)/2.
/// Throws DegenerateGenerator if F' or G' vanishes identically.
LightlikePair bc_lightlike_decomposition(const BCData& d);

/// Largest coefficient magnitude of <c', c'> (zero for a lightlike curve).
double lightlike_defect(const CurveL3& c);

/// Parses `F = [...]`, `G = [...]`, `domain = [r0, r1, s0, s1]`,
/// `grid = [nr, ns]`. Throws ParseError.
BCData parse_bc(const std::string& text);
/// Throws FileNotFound or ParseError.
BCData load_bc(const std::filesystem::path& path);
std::string bc_to_toml(const BCData& d);

struct BCDiagnostics {
    double psi_defect = 0.0;
    double phi_defect = 0.0;
    double reconstruction_error = 0.0;  // max ||X - (psi + phi)/2|| over nodes
    double max_abs_h = 0.0;
    double max_rel_h = 0.0;
    double normal_independence = 0.0;   // max deviation from the F = G = r reference normal
    std::size_t normal_points = 0;
    std::vector<std::size_t> flat_nodes;  // K ~ 0 or no graph jet over the y-z plane
    std::size_t lightlike_nodes = 0;
};

/// |K| below this counts as a zero Gauss curvature point.
inline constexpr double kFlatCurvatureTol = 1e-10;

BCDiagnostics bc_diagnostics(const BCData& d, const SurfaceSample& sample);

}  // namespace bjbi
