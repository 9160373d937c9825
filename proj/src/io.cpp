#include "bjbi/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bjbi/errors.hpp"

namespace bjbi {

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void append_vec(std::string& out, Vec3L v) {
    out += g17(v.x);
    out += ',';
    out += g17(v.y);
    out += ',';
    out += g17(v.z);
}

}  // namespace

std::string obj_text(const SurfaceSample& s) {
    std::string out = "# bjbi surface, " + std::to_string(s.size()) + " vertices\n";
    for (const auto& n : s.nodes) out += "v " + g17(n.X.x) + " " + g17(n.X.y) + " " + g17(n.X.z) + "\n";
    for (const auto& t : triangulate(s))
        out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " + std::to_string(t[2] + 1) + "\n";
    return out;
}

std::string surface_csv_text(const SurfaceSample& s, const FundamentalForms& forms,
                             const std::vector<SurfaceCausal>& causal) {
    std::string out = std::string(kSurfaceCsvHeader) + "\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& n = s.nodes[k];
        out += g17(n.u) + "," + g17(n.v) + ",";
        append_vec(out, n.X);
        out += ',';
        append_vec(out, n.N);
        out += "," + g17(forms.nodes[k].H) + "," + g17(forms.nodes[k].disc) + "," + std::string(to_string(causal[k])) +
               "\n";
    }
    return out;
}

std::string lightlike_csv_text(const LightlikePair& pair, const GridSpec& grid) {
    std::string out = "curve,t,x,y,z,dx,dy,dz,self_inner\n";
    auto rows = [&](const char* name, const CurveL3& c, int count, auto at) {
        const CurveL3 dc = c.derivative();
        for (int k = 0; k < count; ++k) {
            const double t = at(k);
            const Vec3L d = dc(t);
            out += std::string(name) + "," + g17(t) + ",";
            append_vec(out, c(t));
            out += ',';
            append_vec(out, d);
            out += "," + g17(minkowski_inner(d, d)) + "\n";
        }
    };
    rows("psi", pair.psi, grid.nu, [&](int k) { return grid.u_at(k); });
    rows("phi", pair.phi, grid.nv, [&](int k) { return grid.v_at(k); });
    return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, std::size_t line) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw ParseError("surface CSV line " + std::to_string(line) + ": bad number '" + s + "'");
    return x;
}

}  // namespace

std::vector<SurfaceCsvRow> parse_surface_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("surface CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSurfaceCsvHeader) throw ParseError("surface CSV header must be '" + std::string(kSurfaceCsvHeader) + "'");
    std::vector<SurfaceCsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_commas(line);
        if (f.size() != 11)
            throw ParseError("surface CSV line " + std::to_string(lineno) + ": expected 11 columns, got " +
                             std::to_string(f.size()));
        double x[10];
        for (std::size_t k = 0; k < 10; ++k) x[k] = parse_number(f[k], lineno);
        for (std::size_t k = 0; k < 8; ++k)
            if (!std::isfinite(x[k]))
                throw ParseError("surface CSV line " + std::to_string(lineno) + ": non-finite coordinate");
        rows.push_back({x[0], x[1], {x[2], x[3], x[4]}, {x[5], x[6], x[7]}, x[8], x[9], f[10]});
    }
    if (rows.empty()) throw ParseError("surface CSV has no rows");
    return rows;
}

namespace {

/// Sorted distinct values of a regular lattice axis; throws when irregular.
std::vector<double> lattice_axis(std::vector<double> vals, const char* name) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.size() < 3)
        throw ParseError(std::string("surface CSV needs at least 3 distinct ") + name + " values for finite differences");
    const double step = (vals.back() - vals.front()) / static_cast<double>(vals.size() - 1);
    const double tol = 1e-9 * std::max({1.0, std::abs(vals.front()), std::abs(vals.back())});
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (std::abs(vals[k] - (vals.front() + step * static_cast<double>(k))) > tol)
            throw ParseError(std::string("surface CSV ") + name + " values do not form a regular lattice");
    return vals;
}

}  // namespace

SurfaceSample sample_from_csv_rows(const std::vector<SurfaceCsvRow>& rows) {
    std::vector<double> us, vs;
    for (const auto& r : rows) {
        us.push_back(r.u);
        vs.push_back(r.v);
    }
    const auto ua = lattice_axis(us, "u"), va = lattice_axis(vs, "v");
    const int nu = static_cast<int>(ua.size()), nv = static_cast<int>(va.size());
    const GridSpec grid{ua.front(), ua.back(), va.front(), va.back(), nu, nv};
    const double du = grid.du(), dv = grid.dv();

    std::vector<int> at(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv), -1);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const int i = static_cast<int>(std::lround((rows[k].u - grid.u0) / du));
        const int j = static_cast<int>(std::lround((rows[k].v - grid.v0) / dv));
        int& slot = at[static_cast<std::size_t>(j * nu + i)];
        if (slot >= 0) throw ParseError("surface CSV repeats the parameter point (" + g17(rows[k].u) + ", " + g17(rows[k].v) + ")");
        slot = static_cast<int>(k);
    }
    auto X = [&](int i, int j) -> const Vec3L* {
        if (i < 0 || j < 0 || i >= nu || j >= nv) return nullptr;
        const int k = at[static_cast<std::size_t>(j * nu + i)];
        return k < 0 ? nullptr : &rows[static_cast<std::size_t>(k)].X;
    };

    SurfaceSample s;
    s.grid = grid;
    s.shape = DomainShape::rect;
    s.exact_partials = false;
    s.origin = "csv";
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const Vec3L* c = X(i, j);
            if (!c) continue;
            const Vec3L *e = X(i + 1, j), *w = X(i - 1, j), *n = X(i, j + 1), *so = X(i, j - 1);
            const Vec3L *ne = X(i + 1, j + 1), *nw = X(i - 1, j + 1), *se = X(i + 1, j - 1), *sw = X(i - 1, j - 1);
            if (!e || !w || !n || !so || !ne || !nw || !se || !sw) continue;
            SurfaceNode node;
            node.u = grid.u_at(i);
            node.v = grid.v_at(j);
            node.i = i;
            node.j = j;
            node.X = *c;
            node.Xu = (*e - *w) / (2 * du);
            node.Xv = (*n - *so) / (2 * dv);
            node.Xuu = (*e - 2.0 * *c + *w) / (du * du);
            node.Xvv = (*n - 2.0 * *c + *so) / (dv * dv);
            node.Xuv = (*ne - *nw - *se + *sw) / (4 * du * dv);
            assign_normal(node);
            const Vec3L stored = rows[static_cast<std::size_t>(at[static_cast<std::size_t>(j * nu + i)])].N;
            if (!node.lightlike && euclid_dot(node.N, stored) < 0) node.N = -node.N;
            s.nodes.push_back(node);
        }
    if (s.nodes.empty()) throw ParseError("surface CSV has no node with a complete finite-difference stencil");
    s.rebuild_index();
    return s;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound("file not found: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace bjbi
