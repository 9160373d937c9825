#include "bjbi/surface.hpp"

#include <algorithm>
#include <array>

#include "bjbi/errors.hpp"

namespace bjbi {

const SurfaceNode* SurfaceSample::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= grid.nu || j >= grid.nv) return nullptr;
    int k = node_at[static_cast<std::size_t>(j * grid.nu + i)];
    return k < 0 ? nullptr : &nodes[static_cast<std::size_t>(k)];
}

void SurfaceSample::rebuild_index() {
    node_at.assign(static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv), -1);
    for (std::size_t k = 0; k < nodes.size(); ++k)
        node_at[static_cast<std::size_t>(nodes[k].j * grid.nu + nodes[k].i)] = static_cast<int>(k);
}

void assign_normal(SurfaceNode& node) {
    Vec3L c = lorentz_cross(node.Xu, node.Xv);
    try {
        node.N = unit_normalize(c);
        node.lightlike = false;
    } catch (const LightlikeVector&) {
        node.N = {};
        node.lightlike = true;
    }
}

std::vector<std::array<std::size_t, 3>> triangulate(const SurfaceSample& s) {
    std::vector<std::array<std::size_t, 3>> tris;
    for (int j = 0; j + 1 < s.grid.nv; ++j)
        for (int i = 0; i + 1 < s.grid.nu; ++i) {
            const int a = s.node_at[static_cast<std::size_t>(j * s.grid.nu + i)];
            const int b = s.node_at[static_cast<std::size_t>(j * s.grid.nu + i + 1)];
            const int c = s.node_at[static_cast<std::size_t>((j + 1) * s.grid.nu + i + 1)];
            const int d = s.node_at[static_cast<std::size_t>((j + 1) * s.grid.nu + i)];
            if (a < 0 || b < 0 || c < 0 || d < 0) continue;
            // Diagonal from the lower-left corner a to the upper-right corner c.
            tris.push_back({std::size_t(a), std::size_t(b), std::size_t(c)});
            tris.push_back({std::size_t(a), std::size_t(c), std::size_t(d)});
        }
    return tris;
}

double position_scale(const SurfaceSample& s) {
    double m = 1.0;
    for (const auto& n : s.nodes) m = std::max(m, euclid_norm(n.X));
    return m;
}

}  // namespace bjbi
