#pragma once

// Numerical differential geometry on sampled surfaces: fundamental forms,
// curvature, the Born-Infeld residual, causal classification and height
// extraction over timelike planes.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bjbi/lorentz.hpp"
#include "bjbi/surface.hpp"

namespace bjbi {

struct NodeForms {
    double E = 0, F = 0, G = 0;   // first fundamental form
    double L = 0, M = 0, N2 = 0;  // second fundamental form w.r.t. the unit normal
    double disc = 0;              // EG - F^2
    double H = 0;                 // NaN at degenerate nodes
    double h_scale = 0;           // (|GL| + 2|FM| + |EN2|) / (2|disc|)
    bool degenerate = false;
};

struct FundamentalForms {
    std::vector<NodeForms> nodes;
    std::size_t degenerate_count = 0;
};

/// Metric discriminants with |EG - F^2| <= kMetricTol * (|E||G| + F^2) are degenerate.
inline constexpr double kMetricTol = 1e-10;

FundamentalForms fundamental_forms(const SurfaceSample& sample);

struct MinimalityStats {
    double max_abs_h = 0.0;
    double max_rel_h = 0.0;   // max |H| / max(1, h_scale)
    std::size_t checked = 0;
    std::size_t worst_node = 0;
};

/// |H| over nodes with |EG - F^2| >= min_disc.
MinimalityStats minimality(const FundamentalForms& forms, double min_disc = 1e-6);

/// Which plane variables are spacelike. space_time: first spacelike, second
/// timelike (graphs over timelike planes). space_space: both spacelike
/// (graphs over the x-y plane).
enum class Signature { space_time, space_space };

/// Regular lattice over plane coordinates (a, b); values row-major, b outer.
struct PlaneGrid {
    double a0 = 0, b0 = 0, da = 1, db = 1;
    int na = 0, nb = 0;
    double a_at(int i) const { return a0 + da * i; }
    double b_at(int j) const { return b0 + db * j; }
};

/// Second-order jet of a height function at one point.
struct HeightJet {
    double psi = 0, pa = 0, pb = 0, paa = 0, pab = 0, pbb = 0;
};

/// Height function psi(a, b) with first and second derivative fields, either
/// on a regular PlaneGrid or at scattered points. Invalid points hold zeros
/// and are skipped by every consumer.
struct HeightField {
    Signature signature = Signature::space_time;
    std::optional<PlaneGrid> grid;
    std::vector<double> a, b;
    std::vector<HeightJet> jet;
    std::vector<std::uint8_t> valid;

    std::size_t size() const { return jet.size(); }
    std::size_t valid_count() const;
    void push(double pa, double pb, const HeightJet& j, bool ok);

    /// Exact jets from a callable (a, b) -> HeightJet.
    static HeightField from_function(const PlaneGrid& g, const std::function<HeightJet(double, double)>& f,
                                     Signature sig = Signature::space_time);
    /// Values on a regular grid, derivatives by second-order central
    /// differences. Boundary points are invalid.
    static HeightField from_values_fd(const PlaneGrid& g, std::span<const double> values,
                                      Signature sig = Signature::space_time);
};

/// (1 - pb^2) paa + 2 pa pb pab - (1 + pa^2) pbb for space_time signature,
/// (1 - pb^2) paa + 2 pa pb pab + (1 - pa^2) pbb for space_space. NaN at
/// invalid points.
std::vector<double> born_infeld_residual(const HeightField& h);

/// Sum of the magnitudes of the residual's three terms (plus one).
std::vector<double> born_infeld_scale(const HeightField& h);

struct CurvatureField {
    std::vector<double> K;            // NaN where flagged
    std::vector<std::uint8_t> flagged; // pa^2 - pb^2 + 1 <= tol, or invalid
};

/// K = (paa pbb - pab^2) / (pa^2 - pb^2 + 1)^2 for a graph (psi(y,z), y, z).
CurvatureField gauss_curvature_graph(const HeightField& h, double tol = 1e-10);

enum class SurfaceCausal { timelike, spacelike, degenerate };

std::string_view to_string(SurfaceCausal c) noexcept;

/// Sign of EG - F^2 per node; |EG - F^2| <= kMetricTol * (1 + E^2 + F^2 + G^2) is degenerate.
std::vector<SurfaceCausal> causal_classify(const SurfaceSample& sample);

enum GraphAxis : unsigned { axis_xy = 1u, axis_xz = 2u, axis_yz = 4u };

/// Bitmask of coordinate planes whose 2x2 minor of [X_u X_v] is nonzero.
std::vector<unsigned> local_graph_axes(const SurfaceSample& sample, double rel_tol = 1e-10);

/// Exact height jets at every node via the implicit function theorem, from
/// the node's first and second partials. Scattered (no grid).
HeightField graph_jets(const SurfaceSample& sample, const TimelikePlane& plane);

/// Jets of the height z = phi(x, y) over the x-y plane (space_space
/// signature), for spacelike surfaces.
HeightField graph_jets_xy(const SurfaceSample& sample);

/// Throws NotInjective (with a witness node pair) when the projection
/// X -> (x2, x3) folds or overlaps itself on the sample.
void check_projection_injective(const SurfaceSample& sample, const TimelikePlane& plane);

struct HeightOptions {
    int na = 0;            // target grid size; 0 takes the sample grid size
    int nb = 0;
    int stencil = 12;      // nearest nodes per local fit (at least 9)
    bool use_node_jets = true;  // fit exact nodal derivatives when the sample has them
};

/// Height psi = <X, b1> over the plane, resampled at the given points by
/// local quadratic least-squares fits. Points outside the projected sample
/// are invalid.
HeightField resample_height(const SurfaceSample& sample, const TimelikePlane& plane,
                            std::span<const std::pair<double, double>> points, const HeightOptions& opts = {});

/// Height over the plane on a regular (x2, x3) grid covering the projected
/// sample. Throws NotInjective or InsufficientCoverage.
HeightField height_over_plane(const SurfaceSample& sample, const TimelikePlane& plane, const HeightOptions& opts = {});

/// Scans unit spacelike normals b1(boost, rotation) on a resolution^2 grid,
/// nearest to e1 first, and returns the first plane over which
/// height_over_plane succeeds.
std::optional<TimelikePlane> find_graph_plane(const SurfaceSample& sample, int resolution,
                                              const HeightOptions& opts = {});

/// Largest boost magnitude visited by find_graph_plane.
inline constexpr double kMaxPlaneBoost = 3.0;

}  // namespace bjbi
