#pragma once

// Mesh, CSV and plain-text file output, and CSV surface input.

#include <filesystem>
#include <string>
#include <vector>

#include "bjbi/bc_rep.hpp"
#include "bjbi/geometry_verify.hpp"
#include "bjbi/surface.hpp"

namespace bjbi {

/// Wavefront OBJ: one `v` line per node in storage order, one `f` line per
/// triangle of `triangulate` (1-based indices).
std::string obj_text(const SurfaceSample& s);

inline constexpr const char* kSurfaceCsvHeader = "u,v,x,y,z,Nx,Ny,Nz,H,EGF2,causal";

/// One row per node with full `%.17g` precision; H is `nan` at degenerate nodes.
std::string surface_csv_text(const SurfaceSample& s, const FundamentalForms& forms,
                             const std::vector<SurfaceCausal>& causal);

/// Rows `curve,t,x,y,z,dx,dy,dz,self_inner` for psi at the r samples and phi
/// at the s samples of the grid.
std::string lightlike_csv_text(const LightlikePair& pair, const GridSpec& grid);

struct SurfaceCsvRow {
    double u = 0, v = 0;
    Vec3L X, N;
    double H = 0, disc = 0;
    std::string causal;
};

/// Throws ParseError on a missing header, wrong column count or bad number.
std::vector<SurfaceCsvRow> parse_surface_csv(const std::string& text);

/// Rebuilds a regular grid from the (u, v) columns and estimates X_u, X_v,
/// X_uu, X_uv, X_vv by central differences. Only nodes whose full 3 x 3
/// neighbourhood is present are kept. Throws ParseError when the (u, v)
/// pairs do not form a regular lattice.
SurfaceSample sample_from_csv_rows(const std::vector<SurfaceCsvRow>& rows);

/// Throws FileNotFound.
std::string read_text(const std::filesystem::path& path);
/// Throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bjbi
