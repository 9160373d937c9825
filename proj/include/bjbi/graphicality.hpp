#pragma once

// Whether a Björling solution is a graph over the y-z plane, decided from the
// Jacobian of (u, v) -> (y, z).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bjbi/bjorling.hpp"
#include "bjbi/strips.hpp"
#include "bjbi/surface.hpp"

namespace bjbi {

struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    Mat2 symmetric_part() const { return {a11, 0.5 * (a12 + a21), 0.5 * (a12 + a21), a22}; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// [[y_u, y_v], [z_u, z_v]] at every node, plus the same matrix along the
/// sampled data axis.
struct JacobianField {
    std::vector<Mat2> field;     // aligned with sample.nodes
    std::vector<Mat2> trace;     // aligned with sample.axis
    std::vector<double> trace_t; // curve parameter of each trace sample
};

JacobianField jacobian_field(const SurfaceSample& sample);

/// (m + m^T)/2 has A11 > tol and det > tol^2.
bool is_positive_quasidefinite(const Mat2& m, double tol = 0.0);
/// m11 > tol, m22 > tol and det(m) > tol^2.
bool is_p_matrix(const Mat2& m, double tol = 0.0);

enum class Criterion { pqd, p_matrix };
std::string_view to_string(Criterion c) noexcept;

enum class Verdict { NoGraphSolution, GraphSolutionExists, Indeterminate };
std::string_view to_string(Verdict v) noexcept;

struct Witness {
    double u = 0.0, v = 0.0;
    std::string reason;
};

struct GraphVerdict {
    Verdict verdict = Verdict::Indeterminate;
    Criterion criterion = Criterion::pqd;
    std::vector<Witness> witnesses;
    double tol_zero = 0.0;
    double scale = 0.0;
    std::size_t nodes_checked = 0;
    /// Human-readable scope of the verdict.
    std::string note;
};

/// Witness lists are capped at this many entries per kind.
inline constexpr std::size_t kMaxWitnesses = 16;

/// Relative zero tolerance for det J: |det| <= kDetZeroRel * scale is zero,
/// with scale the largest |a11 a22| + |a12 a21| seen.
inline constexpr double kDetZeroRel = 1e-9;
/// A boundary local minimum of |det J| below kNearZeroRel * scale without a
/// sign change blocks certification.
inline constexpr double kNearZeroRel = 1e-6;

/// criterion_tol < 0 uses the zero tolerance for the matrix test as well.
GraphVerdict classify(const SurfaceSample& sample, const JacobianField& field, Criterion criterion = Criterion::pqd,
                      double criterion_tol = -1.0);
GraphVerdict classify(const SurfaceSample& sample, Criterion criterion = Criterion::pqd, double criterion_tol = -1.0);

/// Sampling domain used to screen a strip: the strip interval along the data
/// axis times a transverse band of half-width a quarter of the interval
/// length, on a 21 x 21 grid.
Domain screening_domain(const Strip& s);

/// Randomized search over low-degree polynomial strips for ones whose sampled
/// Jacobian field is positive quasidefinite with nonvanishing determinant.
/// Deterministic in (budget, seed).
std::vector<Strip> search_pqd_strips(std::size_t budget, std::uint64_t seed);

}  // namespace bjbi
