#include "bjbi/geometry_verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bjbi/errors.hpp"

namespace bjbi {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// Fundamental forms and mean curvature

FundamentalForms fundamental_forms(const SurfaceSample& sample) {
    FundamentalForms out;
    out.nodes.reserve(sample.size());
    for (const auto& n : sample.nodes) {
        NodeForms f;
        f.E = minkowski_inner(n.Xu, n.Xu);
        f.F = minkowski_inner(n.Xu, n.Xv);
        f.G = minkowski_inner(n.Xv, n.Xv);
        f.disc = f.E * f.G - f.F * f.F;
        f.degenerate = n.lightlike || std::abs(f.disc) <= kMetricTol * (std::abs(f.E * f.G) + f.F * f.F);
        if (f.degenerate) {
            f.H = kNaN;
            ++out.degenerate_count;
        } else {
            f.L = minkowski_inner(n.Xuu, n.N);
            f.M = minkowski_inner(n.Xuv, n.N);
            f.N2 = minkowski_inner(n.Xvv, n.N);
            f.H = (f.G * f.L - 2.0 * f.F * f.M + f.E * f.N2) / (2.0 * f.disc);
            f.h_scale = (std::abs(f.G * f.L) + 2.0 * std::abs(f.F * f.M) + std::abs(f.E * f.N2)) / (2.0 * std::abs(f.disc));
        }
        out.nodes.push_back(f);
    }
    return out;
}

MinimalityStats minimality(const FundamentalForms& forms, double min_disc) {
    MinimalityStats st;
    for (std::size_t k = 0; k < forms.nodes.size(); ++k) {
        const auto& f = forms.nodes[k];
        if (f.degenerate || std::abs(f.disc) < min_disc) continue;
        ++st.checked;
        const double rel = std::abs(f.H) / std::max(1.0, f.h_scale);
        st.max_abs_h = std::max(st.max_abs_h, std::abs(f.H));
        if (rel > st.max_rel_h) {
            st.max_rel_h = rel;
            st.worst_node = k;
        }
    }
    return st;
}

// ---------------------------------------------------------------------------
// Height fields

std::size_t HeightField::valid_count() const {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

void HeightField::push(double pa, double pb, const HeightJet& j, bool ok) {
    a.push_back(pa);
    b.push_back(pb);
    jet.push_back(ok ? j : HeightJet{});
    valid.push_back(ok ? 1 : 0);
}

HeightField HeightField::from_function(const PlaneGrid& g, const std::function<HeightJet(double, double)>& f,
                                       Signature sig) {
    HeightField h;
    h.signature = sig;
    h.grid = g;
    for (int j = 0; j < g.nb; ++j)
        for (int i = 0; i < g.na; ++i) h.push(g.a_at(i), g.b_at(j), f(g.a_at(i), g.b_at(j)), true);
    return h;
}

HeightField HeightField::from_values_fd(const PlaneGrid& g, std::span<const double> values, Signature sig) {
    if (values.size() != static_cast<std::size_t>(g.na) * static_cast<std::size_t>(g.nb))
        throw std::invalid_argument("value count does not match the grid");
    HeightField h;
    h.signature = sig;
    h.grid = g;
    auto at = [&](int i, int j) { return values[static_cast<std::size_t>(j * g.na + i)]; };
    for (int j = 0; j < g.nb; ++j)
        for (int i = 0; i < g.na; ++i) {
            const bool interior = i > 0 && j > 0 && i + 1 < g.na && j + 1 < g.nb;
            HeightJet jt;
            jt.psi = at(i, j);
            if (interior) {
                jt.pa = (at(i + 1, j) - at(i - 1, j)) / (2 * g.da);
                jt.pb = (at(i, j + 1) - at(i, j - 1)) / (2 * g.db);
                jt.paa = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (g.da * g.da);
                jt.pbb = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (g.db * g.db);
                jt.pab = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4 * g.da * g.db);
            }
            h.push(g.a_at(i), g.b_at(j), jt, interior);
        }
    return h;
}

std::vector<double> born_infeld_residual(const HeightField& h) {
    std::vector<double> r(h.size(), kNaN);
    const bool space_time = h.signature == Signature::space_time;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!h.valid[k]) continue;
        const auto& j = h.jet[k];
        const double last = space_time ? -(1 + j.pa * j.pa) : (1 - j.pa * j.pa);
        r[k] = (1 - j.pb * j.pb) * j.paa + 2 * j.pa * j.pb * j.pab + last * j.pbb;
    }
    return r;
}

std::vector<double> born_infeld_scale(const HeightField& h) {
    std::vector<double> s(h.size(), kNaN);
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!h.valid[k]) continue;
        const auto& j = h.jet[k];
        s[k] = 1 + std::abs((1 - j.pb * j.pb) * j.paa) + std::abs(2 * j.pa * j.pb * j.pab) +
               std::abs((1 + j.pa * j.pa) * j.pbb);
    }
    return s;
}

CurvatureField gauss_curvature_graph(const HeightField& h, double tol) {
    CurvatureField c;
    c.K.assign(h.size(), kNaN);
    c.flagged.assign(h.size(), 1);
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!h.valid[k]) continue;
        const auto& j = h.jet[k];
        const double w = j.pa * j.pa - j.pb * j.pb + 1.0;
        if (w <= tol) continue;
        c.K[k] = (j.paa * j.pbb - j.pab * j.pab) / (w * w);
        c.flagged[k] = 0;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Causal character and graph axes

std::string_view to_string(SurfaceCausal c) noexcept {
    switch (c) {
        case SurfaceCausal::timelike: return "timelike";
        case SurfaceCausal::spacelike: return "spacelike";
        case SurfaceCausal::degenerate: return "degenerate";
    }
    return "unknown";
}

std::vector<SurfaceCausal> causal_classify(const SurfaceSample& sample) {
    std::vector<SurfaceCausal> out;
    out.reserve(sample.size());
    for (const auto& n : sample.nodes) {
        const double E = minkowski_inner(n.Xu, n.Xu), F = minkowski_inner(n.Xu, n.Xv), G = minkowski_inner(n.Xv, n.Xv);
        const double d = E * G - F * F;
        const double tol = kMetricTol * (1 + E * E + F * F + G * G);
        out.push_back(d < -tol ? SurfaceCausal::timelike : (d > tol ? SurfaceCausal::spacelike : SurfaceCausal::degenerate));
    }
    return out;
}

std::vector<unsigned> local_graph_axes(const SurfaceSample& sample, double rel_tol) {
    std::vector<unsigned> out;
    out.reserve(sample.size());
    for (const auto& n : sample.nodes) {
        const Vec3L a = n.Xu, b = n.Xv;
        const double tol = rel_tol * euclid_norm(a) * euclid_norm(b);
        unsigned m = 0;
        if (std::abs(a.x * b.y - a.y * b.x) > tol) m |= axis_xy;
        if (std::abs(a.x * b.z - a.z * b.x) > tol) m |= axis_xz;
        if (std::abs(a.y * b.z - a.z * b.y) > tol) m |= axis_yz;
        out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph jets over a timelike plane

namespace {

/// Plane coordinates of a node with their parametric derivatives.
struct Projected {
    double a, b, h;
    double a_u, a_v, b_u, b_v, h_u, h_v;
    double a_uu, a_uv, a_vv, b_uu, b_uv, b_vv, h_uu, h_uv, h_vv;
};

Projected project(const SurfaceNode& n, const TimelikePlane& p) {
    auto A = [&](Vec3L v) { return p.x2(v); };
    auto B = [&](Vec3L v) { return p.x3(v); };
    auto Hh = [&](Vec3L v) { return p.height(v); };
    return {A(n.X), B(n.X), Hh(n.X),
            A(n.Xu), A(n.Xv), B(n.Xu), B(n.Xv), Hh(n.Xu), Hh(n.Xv),
            A(n.Xuu), A(n.Xuv), A(n.Xvv), B(n.Xuu), B(n.Xuv), B(n.Xvv), Hh(n.Xuu), Hh(n.Xuv), Hh(n.Xvv)};
}

double projected_jacobian(const Projected& q) { return q.a_u * q.b_v - q.a_v * q.b_u; }

std::optional<HeightJet> jet_from_projection(const Projected& q) {
    const double det = projected_jacobian(q);
    const double scale = std::abs(q.a_u * q.b_v) + std::abs(q.a_v * q.b_u);
    if (!(std::abs(det) > 1e-12 * scale) || scale == 0.0) return std::nullopt;
    HeightJet j;
    j.psi = q.h;
    // [h_u h_v] = [pa pb] * [[a_u a_v], [b_u b_v]]
    j.pa = (q.h_u * q.b_v - q.h_v * q.b_u) / det;
    j.pb = (q.h_v * q.a_u - q.h_u * q.a_v) / det;
    // Second order chain rule, one row per parametric second derivative.
    Eigen::Matrix3d M;
    M << q.a_u * q.a_u, 2 * q.a_u * q.b_u, q.b_u * q.b_u,
         q.a_u * q.a_v, q.a_u * q.b_v + q.a_v * q.b_u, q.b_u * q.b_v,
         q.a_v * q.a_v, 2 * q.a_v * q.b_v, q.b_v * q.b_v;
    Eigen::Vector3d r(q.h_uu - j.pa * q.a_uu - j.pb * q.b_uu,
                      q.h_uv - j.pa * q.a_uv - j.pb * q.b_uv,
                      q.h_vv - j.pa * q.a_vv - j.pb * q.b_vv);
    Eigen::Vector3d x = M.partialPivLu().solve(r);
    j.paa = x[0];
    j.pab = x[1];
    j.pbb = x[2];
    return j;
}

}  // namespace

HeightField graph_jets(const SurfaceSample& sample, const TimelikePlane& plane) {
    HeightField h;
    h.signature = Signature::space_time;
    for (const auto& n : sample.nodes) {
        const Projected q = project(n, plane);
        auto j = jet_from_projection(q);
        h.push(q.a, q.b, j.value_or(HeightJet{}), j.has_value());
    }
    return h;
}

HeightField graph_jets_xy(const SurfaceSample& sample) {
    // Cycling coordinates (x, y, z) -> (z, x, y) turns the x-y graph into a
    // y-z graph; the projection formulas are coordinatewise.
    auto cyc = [](Vec3L p) { return Vec3L{p.z, p.x, p.y}; };
    HeightField h;
    h.signature = Signature::space_space;
    for (SurfaceNode n : sample.nodes) {
        n.X = cyc(n.X);
        n.Xu = cyc(n.Xu);
        n.Xv = cyc(n.Xv);
        n.Xuu = cyc(n.Xuu);
        n.Xuv = cyc(n.Xuv);
        n.Xvv = cyc(n.Xvv);
        const Projected q = project(n, TimelikePlane::yz());
        auto j = jet_from_projection(q);
        h.push(q.a, q.b, j.value_or(HeightJet{}), j.has_value());
    }
    return h;
}

// ---------------------------------------------------------------------------
// Spatial bucketing of projected points and triangles

namespace {

class Buckets {
public:
    Buckets(std::span<const double> xs, std::span<const double> ys, double per_cell = 2.0) {
        const std::size_t n = xs.size();
        x0_ = n ? *std::min_element(xs.begin(), xs.end()) : 0.0;
        y0_ = n ? *std::min_element(ys.begin(), ys.end()) : 0.0;
        const double x1 = n ? *std::max_element(xs.begin(), xs.end()) : 1.0;
        const double y1 = n ? *std::max_element(ys.begin(), ys.end()) : 1.0;
        const double w = std::max(x1 - x0_, 1e-300), h = std::max(y1 - y0_, 1e-300);
        const double cells = std::max(1.0, static_cast<double>(n) / per_cell);
        cell_ = std::sqrt(w * h / cells);
        if (!(cell_ > 0) || !std::isfinite(cell_)) cell_ = std::max(w, h);
        nx_ = std::clamp(static_cast<int>(w / cell_) + 1, 1, 4096);
        ny_ = std::clamp(static_cast<int>(h / cell_) + 1, 1, 4096);
        cell_ = std::max(w / nx_, h / ny_) * (1 + 1e-12);
        items_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), {});
    }

    int cx(double x) const { return std::clamp(static_cast<int>(std::floor((x - x0_) / cell_)), 0, nx_ - 1); }
    int cy(double y) const { return std::clamp(static_cast<int>(std::floor((y - y0_) / cell_)), 0, ny_ - 1); }
    double cell() const { return cell_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }

    void insert_box(std::size_t id, double xa, double xb, double ya, double yb) {
        for (int j = cy(ya); j <= cy(yb); ++j)
            for (int i = cx(xa); i <= cx(xb); ++i) items_[cell_index(i, j)].push_back(id);
    }
    const std::vector<std::size_t>& at(int i, int j) const { return items_[cell_index(i, j)]; }

private:
    std::size_t cell_index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i); }
    double x0_, y0_, cell_;
    int nx_, ny_;
    std::vector<std::vector<std::size_t>> items_;
};

struct ProjectedMesh {
    std::vector<double> a, b;
    std::vector<std::array<std::size_t, 3>> tris;
};

/// Barycentric containment with relative slack `eps` (negative eps shrinks the triangle).
bool in_triangle(const ProjectedMesh& m, const std::array<std::size_t, 3>& t, double x, double y, double eps) {
    const double ax = m.a[t[0]], ay = m.b[t[0]], bx = m.a[t[1]], by = m.b[t[1]], cx = m.a[t[2]], cy = m.b[t[2]];
    const double d = (by - cy) * (ax - cx) + (cx - bx) * (ay - cy);
    if (d == 0.0) return false;
    const double l1 = ((by - cy) * (x - cx) + (cx - bx) * (y - cy)) / d;
    const double l2 = ((cy - ay) * (x - cx) + (ax - cx) * (y - cy)) / d;
    const double l3 = 1.0 - l1 - l2;
    return l1 >= -eps && l2 >= -eps && l3 >= -eps;
}

Buckets triangle_buckets(const ProjectedMesh& m) {
    Buckets bk(m.a, m.b, 2.0);
    for (std::size_t k = 0; k < m.tris.size(); ++k) {
        const auto& t = m.tris[k];
        bk.insert_box(k, std::min({m.a[t[0]], m.a[t[1]], m.a[t[2]]}), std::max({m.a[t[0]], m.a[t[1]], m.a[t[2]]}),
                      std::min({m.b[t[0]], m.b[t[1]], m.b[t[2]]}), std::max({m.b[t[0]], m.b[t[1]], m.b[t[2]]}));
    }
    return bk;
}

ProjectedMesh project_mesh(const SurfaceSample& s, const TimelikePlane& p) {
    ProjectedMesh m;
    m.a.reserve(s.size());
    m.b.reserve(s.size());
    for (const auto& n : s.nodes) {
        m.a.push_back(p.x2(n.X));
        m.b.push_back(p.x3(n.X));
    }
    m.tris = triangulate(s);
    return m;
}

}  // namespace

void check_projection_injective(const SurfaceSample& sample, const TimelikePlane& plane) {
    // Local: the projected Jacobian never vanishes and keeps one sign.
    int sign = 0;
    std::size_t first = 0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const Projected q = project(sample.nodes[k], plane);
        const double det = projected_jacobian(q);
        const double scale = std::abs(q.a_u * q.b_v) + std::abs(q.a_v * q.b_u);
        if (!(std::abs(det) > 1e-12 * scale) || scale == 0.0)
            throw NotInjective("projection is singular at node " + std::to_string(k), k, k);
        const int s = det > 0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
            first = k;
        } else if (s != sign) {
            throw NotInjective("projection folds between nodes " + std::to_string(first) + " and " + std::to_string(k),
                               first, k);
        }
    }
    // Global: no projected node falls inside a triangle it does not belong to,
    // and no two nodes coincide.
    const ProjectedMesh m = project_mesh(sample, plane);
    if (m.a.size() < 2) return;
    const double extent = std::max(*std::max_element(m.a.begin(), m.a.end()) - *std::min_element(m.a.begin(), m.a.end()),
                                   *std::max_element(m.b.begin(), m.b.end()) - *std::min_element(m.b.begin(), m.b.end()));
    const double dup_tol = 1e-9 * std::max(extent, 1e-300);

    Buckets nodes(m.a, m.b, 2.0);
    for (std::size_t k = 0; k < m.a.size(); ++k) nodes.insert_box(k, m.a[k], m.a[k], m.b[k], m.b[k]);
    for (std::size_t k = 0; k < m.a.size(); ++k) {
        const int ci = nodes.cx(m.a[k]), cj = nodes.cy(m.b[k]);
        for (int j = std::max(0, cj - 1); j <= std::min(nodes.ny() - 1, cj + 1); ++j)
            for (int i = std::max(0, ci - 1); i <= std::min(nodes.nx() - 1, ci + 1); ++i)
                for (std::size_t o : nodes.at(i, j))
                    if (o > k && std::hypot(m.a[o] - m.a[k], m.b[o] - m.b[k]) <= dup_tol)
                        throw NotInjective("nodes " + std::to_string(k) + " and " + std::to_string(o) +
                                               " project to the same point",
                                           k, o);
    }

    if (m.tris.empty()) return;
    const Buckets tb = triangle_buckets(m);
    for (std::size_t k = 0; k < m.a.size(); ++k)
        for (std::size_t t : tb.at(tb.cx(m.a[k]), tb.cy(m.b[k]))) {
            const auto& tri = m.tris[t];
            if (tri[0] == k || tri[1] == k || tri[2] == k) continue;
            if (in_triangle(m, tri, m.a[k], m.b[k], -1e-9))
                throw NotInjective("node " + std::to_string(k) + " projects inside a foreign triangle at node " +
                                       std::to_string(tri[0]),
                                   k, tri[0]);
        }
}

// ---------------------------------------------------------------------------
// Local quadratic least-squares resampling

namespace {

class HeightFitter {
public:
    HeightFitter(const SurfaceSample& s, const TimelikePlane& p, const HeightOptions& o)
        : mesh_(project_mesh(s, p)),
          nodes_(mesh_.a, mesh_.b, 2.0),
          tris_(triangle_buckets(mesh_)),
          k_(std::max(9, o.stencil)) {
        for (std::size_t k = 0; k < mesh_.a.size(); ++k) nodes_.insert_box(k, mesh_.a[k], mesh_.a[k], mesh_.b[k], mesh_.b[k]);
        psi_.reserve(s.size());
        for (const auto& n : s.nodes) psi_.push_back(p.height(n.X));
        if (o.use_node_jets && s.exact_partials) {
            HeightField j = graph_jets(s, p);
            jets_ok_ = std::all_of(j.valid.begin(), j.valid.end(), [](std::uint8_t v) { return v != 0; });
            if (jets_ok_) node_jets_ = std::move(j.jet);
        }
    }

    bool covers(double x, double y) const {
        if (mesh_.tris.empty()) return false;
        for (std::size_t t : tris_.at(tris_.cx(x), tris_.cy(y)))
            if (in_triangle(mesh_, mesh_.tris[t], x, y, 1e-9)) return true;
        return false;
    }

    std::optional<HeightJet> fit(double x, double y) const {
        if (!covers(x, y)) return std::nullopt;
        const auto stencil = nearest(x, y);
        if (stencil.size() < 9) return std::nullopt;
        double rho = 0.0;
        for (std::size_t k : stencil) rho = std::max(rho, std::hypot(mesh_.a[k] - x, mesh_.b[k] - y));
        if (!(rho > 0.0)) return std::nullopt;

        const auto K = static_cast<Eigen::Index>(stencil.size());
        Eigen::MatrixXd A(K, 6);
        const int nrhs = jets_ok_ ? 6 : 1;
        Eigen::MatrixXd rhs(K, nrhs);
        for (Eigen::Index r = 0; r < K; ++r) {
            const std::size_t k = stencil[static_cast<std::size_t>(r)];
            const double dx = (mesh_.a[k] - x) / rho, dy = (mesh_.b[k] - y) / rho;
            A.row(r) << 1.0, dx, dy, dx * dx, dx * dy, dy * dy;
            if (jets_ok_) {
                const HeightJet& j = node_jets_[k];
                rhs.row(r) << j.psi, j.pa, j.pb, j.paa, j.pab, j.pbb;
            } else {
                rhs(r, 0) = psi_[k];
            }
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        if (qr.rank() < 6) return std::nullopt;
        const Eigen::MatrixXd c = qr.solve(rhs);

        HeightJet j;
        if (jets_ok_) {
            // Each derivative field is fitted on its own; the fit values are the jet.
            j = {c(0, 0), c(0, 1), c(0, 2), c(0, 3), c(0, 4), c(0, 5)};
        } else {
            j.psi = c(0, 0);
            j.pa = c(1, 0) / rho;
            j.pb = c(2, 0) / rho;
            j.paa = 2.0 * c(3, 0) / (rho * rho);
            j.pab = c(4, 0) / (rho * rho);
            j.pbb = 2.0 * c(5, 0) / (rho * rho);
        }
        return j;
    }

    const ProjectedMesh& mesh() const { return mesh_; }

private:
    std::vector<std::size_t> nearest(double x, double y) const {
        const int ci = nodes_.cx(x), cj = nodes_.cy(y);
        const int max_ring = std::max(nodes_.nx(), nodes_.ny());
        std::vector<std::pair<double, std::size_t>> cand;
        for (int r = 0; r <= max_ring; ++r) {
            for (int j = cj - r; j <= cj + r; ++j)
                for (int i = ci - r; i <= ci + r; ++i) {
                    if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
                    if (i < 0 || j < 0 || i >= nodes_.nx() || j >= nodes_.ny()) continue;
                    for (std::size_t k : nodes_.at(i, j))
                        cand.emplace_back(std::hypot(mesh_.a[k] - x, mesh_.b[k] - y), k);
                }
            if (cand.size() >= static_cast<std::size_t>(k_)) {
                std::nth_element(cand.begin(), cand.begin() + (k_ - 1), cand.end());
                // Every unvisited node is at least r * cell away.
                if (cand[static_cast<std::size_t>(k_ - 1)].first <= r * nodes_.cell()) break;
            }
        }
        std::sort(cand.begin(), cand.end());
        if (cand.size() > static_cast<std::size_t>(k_)) cand.resize(static_cast<std::size_t>(k_));
        std::vector<std::size_t> out;
        for (const auto& c : cand) out.push_back(c.second);
        return out;
    }

    ProjectedMesh mesh_;
    Buckets nodes_;
    Buckets tris_;
    int k_;
    std::vector<double> psi_;
    std::vector<HeightJet> node_jets_;
    bool jets_ok_ = false;
};

}  // namespace

HeightField resample_height(const SurfaceSample& sample, const TimelikePlane& plane,
                            std::span<const std::pair<double, double>> points, const HeightOptions& opts) {
    if (sample.size() < 9) throw InsufficientCoverage("height fits need at least 9 sample nodes");
    const HeightFitter fitter(sample, plane, opts);
    HeightField h;
    h.signature = Signature::space_time;
    for (auto [x, y] : points) {
        auto j = fitter.fit(x, y);
        h.push(x, y, j.value_or(HeightJet{}), j.has_value());
    }
    return h;
}

HeightField height_over_plane(const SurfaceSample& sample, const TimelikePlane& plane, const HeightOptions& opts) {
    if (sample.size() < 9) throw InsufficientCoverage("height fits need at least 9 sample nodes");
    check_projection_injective(sample, plane);
    const HeightFitter fitter(sample, plane, opts);
    const auto& m = fitter.mesh();
    const auto [amin, amax] = std::minmax_element(m.a.begin(), m.a.end());
    const auto [bmin, bmax] = std::minmax_element(m.b.begin(), m.b.end());

    PlaneGrid g;
    g.na = std::max(2, opts.na > 0 ? opts.na : sample.grid.nu);
    g.nb = std::max(2, opts.nb > 0 ? opts.nb : sample.grid.nv);
    g.a0 = *amin;
    g.b0 = *bmin;
    g.da = (*amax - *amin) / (g.na - 1);
    g.db = (*bmax - *bmin) / (g.nb - 1);

    HeightField h;
    h.signature = Signature::space_time;
    h.grid = g;
    for (int j = 0; j < g.nb; ++j)
        for (int i = 0; i < g.na; ++i) {
            auto jet = fitter.fit(g.a_at(i), g.b_at(j));
            h.push(g.a_at(i), g.b_at(j), jet.value_or(HeightJet{}), jet.has_value());
        }
    if (h.valid_count() == 0) throw InsufficientCoverage("no resampling point is covered by the projected sample");
    return h;
}

std::optional<TimelikePlane> find_graph_plane(const SurfaceSample& sample, int resolution, const HeightOptions& opts) {
    if (sample.empty() || resolution < 1) return std::nullopt;
    const int half = std::max(1, (resolution - 1) / 2);
    struct Candidate {
        double boost, rotation, distance;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const double boost = resolution == 1 ? 0.0 : kMaxPlaneBoost * (i - (resolution - 1) / 2) / half;
            const double rot = std::numbers::pi * j / resolution;
            cands.push_back({boost, rot, std::abs(boost) + std::min(rot, std::numbers::pi - rot)});
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });
    for (const auto& c : cands) {
        const TimelikePlane p = TimelikePlane::from_angles(c.boost, c.rotation);
        try {
            (void)height_over_plane(sample, p, opts);
            return p;
        } catch (const NotInjective&) {
        } catch (const InsufficientCoverage&) {
        }
    }
    return std::nullopt;
}

}  // namespace bjbi
