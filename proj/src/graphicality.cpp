#include "bjbi/graphicality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bjbi/errors.hpp"

namespace bjbi {

namespace {

Mat2 yz_jacobian(const SurfaceNode& n) { return {n.Xu.y, n.Xv.y, n.Xu.z, n.Xv.z}; }

double magnitude(const Mat2& m) { return std::abs(m.a11 * m.a22) + std::abs(m.a12 * m.a21); }

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

JacobianField jacobian_field(const SurfaceSample& sample) {
    JacobianField f;
    f.field.reserve(sample.size());
    for (const auto& n : sample.nodes) f.field.push_back(yz_jacobian(n));
    for (const auto& n : sample.axis) {
        f.trace.push_back(yz_jacobian(n));
        f.trace_t.push_back(sample.data_axis == DataAxis::v_axis ? n.v : n.u);
    }
    return f;
}

bool is_positive_quasidefinite(const Mat2& m, double tol) {
    const Mat2 a = m.symmetric_part();
    return a.a11 > tol && a.det() > tol * tol;
}

bool is_p_matrix(const Mat2& m, double tol) { return m.a11 > tol && m.a22 > tol && m.det() > tol * tol; }

std::string_view to_string(Criterion c) noexcept { return c == Criterion::pqd ? "pqd" : "pmatrix"; }

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::NoGraphSolution: return "NoGraphSolution";
        case Verdict::GraphSolutionExists: return "GraphSolutionExists";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

GraphVerdict classify(const SurfaceSample& sample, const JacobianField& jf, Criterion criterion, double criterion_tol) {
    GraphVerdict out;
    out.criterion = criterion;
    for (const auto& m : jf.field) out.scale = std::max(out.scale, magnitude(m));
    for (const auto& m : jf.trace) out.scale = std::max(out.scale, magnitude(m));
    out.tol_zero = kDetZeroRel * out.scale;
    const double tol = criterion_tol < 0.0 ? out.tol_zero : criterion_tol;
    auto is_zero = [&](double d) { return std::abs(d) <= out.tol_zero; };

    // Boundary trace along the data axis.
    std::vector<Witness> boundary, near_zero;
    auto axis_uv = [&](std::size_t k) { return std::pair{sample.axis[k].u, sample.axis[k].v}; };
    for (std::size_t k = 0; k < jf.trace.size(); ++k) {
        const double d = jf.trace[k].det();
        auto [u, v] = axis_uv(k);
        if (is_zero(d)) {
            if (boundary.size() < kMaxWitnesses)
                boundary.push_back({u, v, "det J vanishes on the data axis (" + format_number(d) + ")"});
            continue;
        }
        if (k > 0) {
            const double p = jf.trace[k - 1].det();
            if (!is_zero(p) && (p > 0) != (d > 0) && boundary.size() < kMaxWitnesses)
                boundary.push_back({u, v, "det J changes sign on the data axis"});
        }
        if (k > 0 && k + 1 < jf.trace.size()) {
            const double a = std::abs(d);
            if (a <= std::abs(jf.trace[k - 1].det()) && a <= std::abs(jf.trace[k + 1].det()) &&
                a < kNearZeroRel * out.scale && near_zero.size() < kMaxWitnesses)
                near_zero.push_back({u, v, "det J nearly vanishes on the data axis without a sign change"});
        }
    }
    if (!boundary.empty()) {
        out.verdict = Verdict::NoGraphSolution;
        out.witnesses = std::move(boundary);
        out.note = "det J has a zero on the data axis; no singularity-free graph over the y-z plane";
        return out;
    }

    // Full field over the sampled nodes.
    std::vector<Witness> failures;
    std::size_t failed = 0;
    for (std::size_t k = 0; k < jf.field.size(); ++k) {
        const Mat2& m = jf.field[k];
        const SurfaceNode& n = sample.nodes[k];
        ++out.nodes_checked;
        std::string reason;
        if (is_zero(m.det()))
            reason = "det J vanishes";
        else if (criterion == Criterion::pqd && !is_positive_quasidefinite(m, tol))
            reason = "J is not positive quasidefinite";
        else if (criterion == Criterion::p_matrix && !is_p_matrix(m, tol))
            reason = "J is not a P-matrix";
        if (reason.empty()) continue;
        ++failed;
        if (failures.size() < kMaxWitnesses) failures.push_back({n.u, n.v, reason});
    }

    const bool convex = sample.shape == DomainShape::rect || sample.shape == DomainShape::diamond;
    if (failed == 0 && near_zero.empty() && convex && !jf.field.empty()) {
        out.verdict = Verdict::GraphSolutionExists;
        out.note = "certified on the sampled set (" + std::to_string(out.nodes_checked) + " nodes, criterion " +
                   std::string(to_string(criterion)) + ")";
        return out;
    }
    out.verdict = Verdict::Indeterminate;
    out.witnesses = std::move(near_zero);
    for (auto& w : failures)
        if (out.witnesses.size() < 2 * kMaxWitnesses) out.witnesses.push_back(std::move(w));
    out.note = std::to_string(failed) + " of " + std::to_string(out.nodes_checked) +
               " sampled nodes fail the criterion; neither conclusion is certified";
    return out;
}

GraphVerdict classify(const SurfaceSample& sample, Criterion criterion, double criterion_tol) {
    return classify(sample, jacobian_field(sample), criterion, criterion_tol);
}

Domain screening_domain(const Strip& s) {
    const Interval I = s.interval();
    const double w = 0.25 * (I.t1 - I.t0);
    const bool v_axis = build_holomorphic_data(s).data_axis == DataAxis::v_axis;
    return v_axis ? Domain::rect(-w, w, I.t0, I.t1, 21, 21) : Domain::rect(I.t0, I.t1, -w, w, 21, 21);
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

RealPoly random_poly(Rng& rng, int degree, double amp) {
    std::vector<double> c;
    for (int k = 0; k <= degree; ++k) c.push_back(uniform(rng, -amp, amp));
    return RealPoly(c);
}

/// Rotation about the z axis followed by a boost in the x-z plane; both
/// preserve the Lorentzian metric.
CurveL3 lorentz_transform(const CurveL3& c, double rotation, double boost) {
    const RealPoly &x = c.local(0), &y = c.local(1), &z = c.local(2);
    const double cr = std::cos(rotation), sr = std::sin(rotation);
    const double ch = std::cosh(boost), sh = std::sinh(boost);
    const RealPoly xr = cr * x - sr * y, yr = sr * x + cr * y;
    return CurveL3::polynomial(ch * xr + sh * z, yr, sh * xr + ch * z);
}

/// Strip whose normal is an exact polynomial unit field and whose tangent is
/// n x w, so the orthogonality identity holds by construction.
std::optional<Strip> random_polynomial_strip(Rng& rng) {
    const bool spacelike_surface = uniform(rng, 0.0, 1.0) < 0.5;
    const RealPoly p = random_poly(rng, 2, 0.5);
    CurveL3 n = spacelike_surface
                    ? CurveL3::polynomial(p, 0.5 * (p * p), RealPoly::constant(1.0) + 0.5 * (p * p))
                    : CurveL3::polynomial(RealPoly::constant(1.0), p, p);
    // Draws are sequenced explicitly so the stream does not depend on argument evaluation order.
    const double rotation = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double boost = uniform(rng, -1.0, 1.0);
    n = lorentz_transform(n, rotation, boost);
    const RealPoly wx = random_poly(rng, 1, 1.0);
    const RealPoly wy = random_poly(rng, 1, 1.0);
    const RealPoly wz = random_poly(rng, 1, 1.0);
    const CurveL3 w = CurveL3::polynomial(wx, wy, wz);
    const CurveL3 dc = lorentz_cross(n, w);
    StripData d;
    d.c = dc.antiderivative_from(0.0);
    d.n = n;
    d.interval = {-0.5, 0.5};
    d.variant = spacelike_surface ? SurfaceVariant::spacelike_surface : SurfaceVariant::timelike_surface;
    try {
        return Strip(std::move(d));
    } catch (const InvalidStrip&) {
        return std::nullopt;
    }
}

Strip spacelike_family_strip(double gamma) {
    StripData d;
    d.c = CurveL3::polynomial(RealPoly{}, RealPoly::monomial(1, 1.0), RealPoly{});
    d.n = CurveL3::polynomial(RealPoly::constant(std::sinh(gamma)), RealPoly{}, RealPoly::constant(std::cosh(gamma)));
    d.interval = {-1.0, 1.0};
    d.variant = SurfaceVariant::spacelike_surface;
    return Strip(std::move(d));
}

}  // namespace

std::vector<Strip> search_pqd_strips(std::size_t budget, std::uint64_t seed) {
    std::vector<Strip> found;
    Rng rng(seed);
    for (std::size_t it = 0; it < budget; ++it) {
        std::optional<Strip> s;
        if (uniform(rng, 0.0, 1.0) < 0.25)
            s = spacelike_family_strip(2.0 - uniform(rng, 0.0, 2.0));  // gamma in (0, 2]
        else
            s = random_polynomial_strip(rng);
        if (!s) continue;
        try {
            const SurfaceSample sample = solve(*s, screening_domain(*s));
            if (classify(sample, Criterion::pqd).verdict == Verdict::GraphSolutionExists) found.push_back(*s);
        } catch (const Error&) {
        }
    }
    return found;
}

}  // namespace bjbi
