#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bjbi/cli.hpp"
#include "bjbi/errors.hpp"
#include "bjbi/io.hpp"

using namespace bjbi;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = BJBI_FIXTURES;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bjbi_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Run {
    int code;
    std::string err;
};

/// Runs the installed executable with stderr captured to a file.
Run run(const std::string& args, const fs::path& dir) {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(BJBI_EXE) + " " + args + " 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json report(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

std::string fixture(const std::string& name) { return "\"" + kFixtures + "/" + name + "\""; }

}  // namespace

TEST_CASE("run configurations round-trip through canonical text") {
    RunConfig a;
    a.command = "solve";
    a.input = "strip.toml";
    CHECK(RunConfig::from_canonical(a.canonical()) == a);
    a.domain = DomainArg{DomainShape::rect, -1, 1, -0.1, 1.0 / 3.0, 0};
    a.grid = std::pair{41, 17};
    a.criterion = Criterion::p_matrix;
    a.tol = 1e-7;
    a.out_dir = "out dir";
    const RunConfig b = RunConfig::from_canonical(a.canonical());
    CHECK(b == a);
    CHECK(b.canonical() == a.canonical());
    a.domain = DomainArg{DomainShape::diamond, 0, 0, 0, 0, 2.5};
    CHECK(RunConfig::from_canonical(a.canonical()) == a);
    CHECK_THROWS_AS(RunConfig::from_canonical("command = solve\n"), ParseError);
}

TEST_CASE("domain and grid arguments") {
    const DomainArg r = parse_domain_arg({"rect", "-1", "1", "-2", "2"});
    CHECK(r.shape == DomainShape::rect);
    CHECK(r.v0 == -2.0);
    const DomainArg d = parse_domain_arg({"diamond", "2"});
    CHECK(d.shape == DomainShape::diamond);
    CHECK(d.m == 2.0);
    CHECK_THROWS_AS(parse_domain_arg({"rect", "1", "2"}), ParseError);
    CHECK_THROWS_AS(parse_domain_arg({"rect", "1", "0", "0", "1"}), ParseError);
    CHECK_THROWS_AS(parse_domain_arg({"diamond", "-1"}), ParseError);
    CHECK_THROWS_AS(parse_domain_arg({"disk", "1"}), ParseError);
    CHECK_THROWS_AS(parse_domain_arg({"diamond", "abc"}), ParseError);
    CHECK(parse_grid_arg("41x17") == std::pair{41, 17});
    CHECK_THROWS_AS(parse_grid_arg("41"), ParseError);
    CHECK_THROWS_AS(parse_grid_arg("0x3"), ParseError);
    CHECK_THROWS_AS(parse_grid_arg("4x3x2"), ParseError);
}

TEST_CASE("solve writes mesh, surface and report for the plane fixture") {
    const fs::path out = scratch("solve_plane");
    const Run r = run("solve " + fixture("line_x_normal.toml") + " --domain rect -1 1 -1 1 --grid 41x41 --out \"" +
                          out.string() + "\"",
                      out);
    REQUIRE(r.code == 0);
    const json rep = report(out);
    CHECK(rep["tool"] == "bjbi");
    CHECK(rep["version"] == kToolVersion);
    CHECK(rep["command"] == "solve");
    CHECK(rep["approx_flag"] == false);
    CHECK(rep["nodes"] == 41 * 41);
    CHECK(rep["max_abs_H"].get<double>() <= 1e-8);
    CHECK(rep["boundary_interpolation_error"].get<double>() <= 1e-12);
    CHECK(rep["passed"] == true);
    CHECK(rep["config"]["grid"] == json::array({41, 41}));
    CHECK(RunConfig::from_canonical(rep["config"]["canonical"].get<std::string>()).grid == std::pair{41, 41});

    const std::string obj = slurp(out / "mesh.obj");
    CHECK(std::count(obj.begin(), obj.end(), 'v') >= 41 * 41);
    std::istringstream csv(slurp(out / "surface.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == kSurfaceCsvHeader);
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 41u * 41u);
}

TEST_CASE("outputs are byte-identical across runs") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b})
        REQUIRE(run("solve " + fixture("parabola.toml") + " --grid 21x21 --out \"" + dir.string() + "\"", dir).code == 0);
    for (const char* f : {"mesh.obj", "surface.csv"}) CHECK(slurp(a / f) == slurp(b / f));
    // The report echoes the output directory; everything else must agree.
    json ra = report(a), rb = report(b);
    ra["config"].erase("out");
    rb["config"].erase("out");
    ra["config"].erase("canonical");
    rb["config"].erase("canonical");
    CHECK(ra.dump() == rb.dump());
    // Rerunning into the same directory reproduces the report byte for byte.
    const std::string before = slurp(a / "report.json");
    REQUIRE(run("solve " + fixture("parabola.toml") + " --grid 21x21 --out \"" + a.string() + "\"", a).code == 0);
    CHECK(slurp(a / "report.json") == before);
}

TEST_CASE("diamond domains keep |u| + |v| <= M") {
    const fs::path out = scratch("diamond");
    REQUIRE(run("solve " + fixture("parabola.toml") + " --domain diamond 2 --grid 21x21 --out \"" + out.string() + "\"", out)
                .code == 0);
    const auto rows = parse_surface_csv(slurp(out / "surface.csv"));
    REQUIRE_FALSE(rows.empty());
    for (const auto& row : rows) CHECK(std::abs(row.u) + std::abs(row.v) <= 2.0 + 1e-12);
    CHECK(report(out)["max_rel_H"].get<double>() <= 1e-8);
}

TEST_CASE("classify reports the three verdicts") {
    const std::pair<const char*, const char*> cases[] = {{"line_y_normal.toml", "NoGraphSolution"},
                                                         {"spacelike_boost.toml", "GraphSolutionExists"},
                                                         {"line_x_normal.toml", "Indeterminate"}};
    for (const auto& [file, verdict] : cases) {
        const fs::path out = scratch(std::string("classify_") + verdict);
        REQUIRE(run("classify " + fixture(file) + " --out \"" + out.string() + "\"", out).code == 0);
        const json rep = report(out);
        CHECK(rep["verdict"] == verdict);
        CHECK(rep["criterion"] == "pqd");
        CHECK(rep.contains("witnesses"));
    }
    const fs::path out = scratch("classify_pmatrix");
    REQUIRE(run("classify " + fixture("spacelike_boost.toml") + " --criterion pmatrix --out \"" + out.string() + "\"", out)
                .code == 0);
    CHECK(report(out)["criterion"] == "pmatrix");
}

TEST_CASE("bc runs, the one-node grid and degenerate generators") {
    const fs::path out = scratch("bc");
    REQUIRE(run("bc " + fixture("bc_identity.toml") + " --out \"" + out.string() + "\"", out).code == 0);
    const json rep = report(out);
    CHECK(rep["lightlike_defect_psi"].get<double>() <= 1e-12);
    CHECK(rep["lightlike_defect_phi"].get<double>() <= 1e-12);
    CHECK(rep["normal_independence"]["max_deviation"].get<double>() <= 1e-12);
    CHECK(rep["flat_nodes"].is_array());
    CHECK(fs::exists(out / "lightlike.csv"));
    CHECK(fs::exists(out / "mesh.obj"));

    const fs::path one = scratch("bc_one");
    REQUIRE(run("bc " + fixture("bc_identity.toml") + " --domain rect 0 0 0 0 --grid 1x1 --out \"" + one.string() + "\"",
                one)
                .code == 0);
    std::istringstream obj(slurp(one / "mesh.obj"));
    std::vector<std::string> vertices;
    for (std::string line; std::getline(obj, line);) {
        if (line.rfind("v ", 0) == 0) vertices.push_back(line);
        CHECK(line.rfind("f ", 0) != 0);
    }
    REQUIRE(vertices.size() == 1);
    double x = 1, y = 1, z = 1;
    REQUIRE(std::sscanf(vertices[0].c_str(), "v %lf %lf %lf", &x, &y, &z) == 3);
    CHECK(x == 0.0);
    CHECK(y == 0.0);
    CHECK(z == 0.0);

    const fs::path bad = scratch("bc_const");
    const Run r = run("bc " + fixture("bc_constant_f.toml") + " --out \"" + bad.string() + "\"", bad);
    CHECK(r.code == 3);
    CHECK(r.err.find("DegenerateGenerator") != std::string::npos);
}

TEST_CASE("verify accepts solver output and measures injected residuals") {
    const fs::path solved = scratch("verify_src");
    REQUIRE(run("solve " + fixture("line_x_normal.toml") + " --domain rect -1 1 -1 1 --grid 41x41 --out \"" +
                    solved.string() + "\"",
                solved)
                .code == 0);
    const fs::path out = scratch("verify_plane");
    REQUIRE(run("verify \"" + (solved / "surface.csv").string() + "\" --out \"" + out.string() + "\"", out).code == 0);
    json rep = report(out);
    CHECK(rep["passed"] == true);
    for (const auto& c : rep["checks"]) CHECK(c["passed"] == true);
    CHECK(rep["born_infeld_residual"]["max_abs"].get<double>() <= 1e-10);

    // The graph x = y^2 over the y-z plane: psi = a^2 has residual 2.
    std::ostringstream csv;
    csv << kSurfaceCsvHeader << "\n";
    for (int j = 0; j < 11; ++j)
        for (int i = 0; i < 11; ++i) {
            const double u = -0.5 + 0.1 * i, v = -0.5 + 0.1 * j, q = std::sqrt(1 + 4 * u * u);
            csv << u << "," << v << "," << u * u << "," << u << "," << v << "," << 1 / q << "," << -2 * u / q
                << ",0,0,-1,timelike\n";
        }
    const fs::path injected = scratch("verify_injected");
    std::ofstream(injected / "in.csv") << csv.str();
    const Run r = run("verify \"" + (injected / "in.csv").string() + "\" --out \"" + injected.string() + "\"", injected);
    CHECK(r.code == 4);
    rep = report(injected);
    CHECK(std::abs(rep["born_infeld_residual"]["max_abs"].get<double>() - 2.0) <= 1e-6);
    CHECK(rep["passed"] == false);
}

TEST_CASE("verify handles curved surfaces of both causal types") {
    const std::pair<const char*, const char*> cases[] = {{"timelike_curved.toml", "-0.5 0.5 -0.25 0.25"},
                                                         {"spacelike_curved.toml", "-0.5 0.5 -0.25 0.25"}};
    for (const auto& [file, rect] : cases) {
        std::vector<double> residual;
        for (const char* grid : {"61x61", "121x121"}) {
            const fs::path src = scratch(std::string("curved_src_") + grid);
            REQUIRE(run("solve " + fixture(file) + " --domain rect " + rect + " --grid " + grid + " --out \"" +
                            src.string() + "\"",
                        src)
                        .code == 0);
            const fs::path out = scratch(std::string("curved_out_") + grid);
            run("verify \"" + (src / "surface.csv").string() + "\" --out \"" + out.string() + "\"", out);
            residual.push_back(report(out)["born_infeld_residual"]["max_abs"].get<double>());
        }
        // Finite-difference partials: second order in the spacing.
        CHECK(residual[0] / residual[1] >= 3.5);
    }
}

TEST_CASE("input errors exit with code 2") {
    const fs::path out = scratch("errors");
    Run r = run("solve /nonexistent/strip.toml --out \"" + out.string() + "\"", out);
    CHECK(r.code == 2);
    CHECK(r.err.find("strip file not found") != std::string::npos);
    std::ofstream(out / "bad.csv") << "u,v,x\n1,2,3\n";
    CHECK(run("verify \"" + (out / "bad.csv").string() + "\" --out \"" + out.string() + "\"", out).code == 2);
    CHECK(run("solve " + fixture("parabola.toml") + " --grid 4 --out \"" + out.string() + "\"", out).code == 2);
    CHECK(run("solve " + fixture("parabola.toml") + " --domain disk 1 --out \"" + out.string() + "\"", out).code == 2);
    CHECK(run("explode " + fixture("parabola.toml"), out).code == 2);
    CHECK(run("solve " + fixture("parabola.toml") + " --tol -1", out).code == 2);
}
