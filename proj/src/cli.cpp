#include "bjbi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "bjbi/bc_rep.hpp"
#include "bjbi/bjorling.hpp"
#include "bjbi/errors.hpp"
#include "bjbi/geometry_verify.hpp"
#include "bjbi/io.hpp"
#include "bjbi/strips.hpp"

namespace bjbi {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError(what + ": '" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(x)) throw ParseError(what + ": '" + s + "' is not a finite number");
    return x;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> words_of(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

DomainArg parse_domain_arg(const std::vector<std::string>& w) {
    DomainArg d;
    if (w.size() == 5 && w[0] == "rect") {
        d.shape = DomainShape::rect;
        d.u0 = parse_real(w[1], "--domain rect");
        d.u1 = parse_real(w[2], "--domain rect");
        d.v0 = parse_real(w[3], "--domain rect");
        d.v1 = parse_real(w[4], "--domain rect");
        if (!(d.u0 <= d.u1) || !(d.v0 <= d.v1)) throw ParseError("--domain rect needs u0 <= u1 and v0 <= v1");
        return d;
    }
    if (w.size() == 2 && w[0] == "diamond") {
        d.shape = DomainShape::diamond;
        d.m = parse_real(w[1], "--domain diamond");
        if (!(d.m >= 0)) throw ParseError("--domain diamond needs M >= 0");
        return d;
    }
    throw ParseError("--domain expects 'rect u0 u1 v0 v1' or 'diamond M'");
}

std::pair<int, int> parse_grid_arg(const std::string& text) {
    const auto x = text.find('x');
    auto count = [&](const std::string& s) {
        if (s.empty() || s.size() > 7 || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("--grid expects NxM with positive integers, got '" + text + "'");
        const int n = std::stoi(s);
        if (n < 1) throw ParseError("--grid counts must be positive");
        return n;
    };
    if (x == std::string::npos) throw ParseError("--grid expects NxM, got '" + text + "'");
    return {count(text.substr(0, x)), count(text.substr(x + 1))};
}

std::string RunConfig::canonical() const {
    std::string out;
    out += "command = " + command + "\n";
    out += "input = " + input + "\n";
    if (!domain)
        out += "domain = default\n";
    else if (domain->shape == DomainShape::rect)
        out += "domain = rect " + g17(domain->u0) + " " + g17(domain->u1) + " " + g17(domain->v0) + " " +
               g17(domain->v1) + "\n";
    else
        out += "domain = diamond " + g17(domain->m) + "\n";
    out += "grid = " + (grid ? std::to_string(grid->first) + "x" + std::to_string(grid->second) : std::string("default")) + "\n";
    out += "criterion = " + std::string(to_string(criterion)) + "\n";
    out += "tol = " + (tol ? g17(*tol) : std::string("default")) + "\n";
    out += "out = " + out_dir + "\n";
    return out;
}

RunConfig RunConfig::from_canonical(const std::string& text) {
    static const char* kKeys[] = {"command", "input", "domain", "grid", "criterion", "tol", "out"};
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    std::size_t k = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto eq = line.find(" = ");
        if (k >= std::size(kKeys) || eq == std::string::npos || line.substr(0, eq) != kKeys[k])
            throw ParseError("config line " + std::to_string(k + 1) + " must be '" +
                             (k < std::size(kKeys) ? kKeys[k] : "<end>") + " = ...'");
        const std::string value = line.substr(eq + 3);
        switch (k) {
            case 0: c.command = value; break;
            case 1: c.input = value; break;
            case 2:
                if (value != "default") c.domain = parse_domain_arg(words_of(value));
                break;
            case 3:
                if (value != "default") c.grid = parse_grid_arg(value);
                break;
            case 4:
                if (value == "pqd") c.criterion = Criterion::pqd;
                else if (value == "pmatrix") c.criterion = Criterion::p_matrix;
                else throw ParseError("criterion must be pqd or pmatrix");
                break;
            case 5:
                if (value != "default") c.tol = parse_real(value, "tol");
                break;
            case 6: c.out_dir = value; break;
        }
        ++k;
    }
    if (k != std::size(kKeys)) throw ParseError("config text is incomplete");
    return c;
}

namespace {

Json vec_json(Vec3L v) { return Json::array({v.x, v.y, v.z}); }

Json config_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["input"] = c.input;
    if (c.domain) {
        if (c.domain->shape == DomainShape::rect)
            j["domain"] = {{"shape", "rect"}, {"u0", c.domain->u0}, {"u1", c.domain->u1}, {"v0", c.domain->v0}, {"v1", c.domain->v1}};
        else
            j["domain"] = {{"shape", "diamond"}, {"M", c.domain->m}};
    } else {
        j["domain"] = nullptr;
    }
    j["grid"] = c.grid ? Json::array({c.grid->first, c.grid->second}) : Json(nullptr);
    j["criterion"] = std::string(to_string(c.criterion));
    j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
    j["out"] = c.out_dir;
    j["canonical"] = c.canonical();
    return j;
}

Json report_header(const RunConfig& c, bool approx) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = c.command;
    j["config"] = config_json(c);
    j["approx_flag"] = approx;
    return j;
}

struct Check {
    std::string name;
    double value;
    double limit;
    bool passed() const { return std::isfinite(value) ? value <= limit : false; }
};

Json checks_json(const std::vector<Check>& checks, bool& all_passed) {
    Json arr = Json::array();
    all_passed = true;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"passed", c.passed()}});
        all_passed = all_passed && c.passed();
    }
    return arr;
}

void write_report(const RunConfig& c, const Json& report) {
    write_text(fs::path(c.out_dir) / "report.json", report.dump(2) + "\n");
}

void prepare_out(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + c.out_dir + ": " + ec.message());
}

Domain strip_domain(const RunConfig& c, const Strip& s) {
    const auto [nu, nv] = c.grid.value_or(std::pair{41, 41});
    if (c.domain) {
        if (c.domain->shape == DomainShape::diamond) return Domain::diamond(c.domain->m, nu, nv);
        return Domain::rect(c.domain->u0, c.domain->u1, c.domain->v0, c.domain->v1, nu, nv);
    }
    // Default: the strip interval along the data axis, half its length across.
    const Interval I = s.interval();
    const double w = 0.5 * (I.t1 - I.t0);
    if (build_holomorphic_data(s).data_axis == DataAxis::v_axis) return Domain::rect(-w, w, I.t0, I.t1, nu, nv);
    return Domain::rect(I.t0, I.t1, -w, w, nu, nv);
}

Json causal_counts(const std::vector<SurfaceCausal>& causal) {
    std::size_t t = 0, s = 0, d = 0;
    for (auto c : causal) (c == SurfaceCausal::timelike ? t : c == SurfaceCausal::spacelike ? s : d)++;
    return {{"timelike", t}, {"spacelike", s}, {"degenerate", d}};
}

int cmd_solve(const RunConfig& c, std::ostream& log) {
    const Strip strip = load_strip(c.input);
    const HolomorphicData h = build_holomorphic_data(strip);
    const SurfaceSample s = solve(h, strip_domain(c, strip));
    const FundamentalForms forms = fundamental_forms(s);
    const auto causal = causal_classify(s);
    const MinimalityStats mh = minimality(forms);

    double x_err = 0, n_err = 0;
    for (const auto& a : s.axis) {
        const double t = s.data_axis == DataAxis::v_axis ? a.v : a.u;
        x_err = std::max(x_err, euclid_norm(a.X - strip.c()(t)));
        if (!a.lightlike) n_err = std::max(n_err, euclid_norm(a.N - static_cast<double>(s.normal_sign) * strip.n()(t)));
    }
    const double scale = position_scale(s);

    prepare_out(c);
    write_text(fs::path(c.out_dir) / "mesh.obj", obj_text(s));
    write_text(fs::path(c.out_dir) / "surface.csv", surface_csv_text(s, forms, causal));

    Json r = report_header(c, s.approx_flag);
    r["strip"] = {{"variant", to_string(strip.variant())},
                  {"curve_character", std::string(to_string(strip.curve_character()))},
                  {"interval", Json::array({strip.interval().t0, strip.interval().t1})},
                  {"data_axis", s.data_axis == DataAxis::v_axis ? "v" : "u"}};
    r["nodes"] = s.size();
    r["degenerate_nodes"] = forms.degenerate_count;
    r["causal"] = causal_counts(causal);
    r["normal_sign"] = s.normal_sign;
    r["max_abs_H"] = mh.max_abs_h;
    r["max_rel_H"] = mh.max_rel_h;
    r["H_checked_nodes"] = mh.checked;
    r["boundary_interpolation_error"] = x_err;
    r["boundary_normal_error"] = n_err;
    bool ok = true;
    r["checks"] = checks_json({{"minimality", mh.max_rel_h, c.tol.value_or(kSolveHTol)},
                               {"boundary_interpolation", x_err, 1e-10 * scale}},
                              ok);
    r["passed"] = ok;
    write_report(c, r);
    log << "solve: " << s.size() << " nodes, max |H| = " << g17(mh.max_abs_h) << ", boundary error = " << g17(x_err)
        << (ok ? "" : " (CHECK FAILED)") << "\n";
    return ok ? exit_ok : exit_check;
}

int cmd_classify(const RunConfig& c, std::ostream& log) {
    const Strip strip = load_strip(c.input);
    const SurfaceSample s = solve(strip, strip_domain(c, strip));
    const GraphVerdict v = classify(s, c.criterion, c.tol.value_or(-1.0));

    prepare_out(c);
    Json r = report_header(c, s.approx_flag);
    r["verdict"] = std::string(to_string(v.verdict));
    r["criterion"] = std::string(to_string(v.criterion));
    r["note"] = v.note;
    r["nodes_checked"] = v.nodes_checked;
    r["det_scale"] = v.scale;
    r["tol_zero"] = v.tol_zero;
    Json w = Json::array();
    for (const auto& x : v.witnesses) w.push_back({{"u", x.u}, {"v", x.v}, {"reason", x.reason}});
    r["witnesses"] = w;
    write_report(c, r);
    log << "classify: " << to_string(v.verdict) << " (" << v.note << ")\n";
    return exit_ok;
}

int cmd_bc(const RunConfig& c, std::ostream& log) {
    BCData d = load_bc(c.input);
    if (c.domain) {
        if (c.domain->shape != DomainShape::rect) throw ParseError("bc accepts only rectangular domains");
        d.r0 = c.domain->u0;
        d.r1 = c.domain->u1;
        d.s0 = c.domain->v0;
        d.s1 = c.domain->v1;
    }
    if (c.grid) std::tie(d.nr, d.ns) = *c.grid;
    const LightlikePair pair = bc_lightlike_decomposition(d);
    const SurfaceSample s = bc_surface(d);
    const BCDiagnostics diag = bc_diagnostics(d, s);
    const FundamentalForms forms = fundamental_forms(s);
    const auto causal = causal_classify(s);

    prepare_out(c);
    write_text(fs::path(c.out_dir) / "mesh.obj", obj_text(s));
    write_text(fs::path(c.out_dir) / "surface.csv", surface_csv_text(s, forms, causal));
    write_text(fs::path(c.out_dir) / "lightlike.csv", lightlike_csv_text(pair, s.grid));

    Json r = report_header(c, false);
    r["nodes"] = s.size();
    r["causal"] = causal_counts(causal);
    r["lightlike_defect_psi"] = diag.psi_defect;
    r["lightlike_defect_phi"] = diag.phi_defect;
    r["reconstruction_error"] = diag.reconstruction_error;
    r["max_abs_H"] = diag.max_abs_h;
    r["max_rel_H"] = diag.max_rel_h;
    r["normal_independence"] = {{"max_deviation", diag.normal_independence}, {"points", diag.normal_points},
                                {"reference", "F(r) = r, G(s) = s"}};
    Json flat = Json::array();
    for (std::size_t k : diag.flat_nodes) flat.push_back({{"r", s.nodes[k].u}, {"s", s.nodes[k].v}});
    r["flat_nodes"] = flat;

    // Our normal next to the commonly printed one, with their tangency residuals.
    Json cmp = Json::array();
    const BCPrimitives p = bc_primitives(d);
    for (auto [rr, ss] : {std::pair{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}, {0.5, -0.3}}) {
        const SurfaceNode n = bc_node(d, p, rr, ss);
        Json e{{"r", rr}, {"s", ss}};
        try {
            const Vec3L ours = bc_normal(d, rr, ss);
            e["normal"] = vec_json(ours);
            e["normal_tangency"] = std::max(std::abs(minkowski_inner(ours, n.Xu)), std::abs(minkowski_inner(ours, n.Xv)));
        } catch (const DegeneratePoint&) {
            e["normal"] = nullptr;
        }
        const Vec3L printed = printed_normal(rr, ss);
        e["printed_normal"] = vec_json(printed);
        e["printed_normal_tangency"] =
            std::max(std::abs(minkowski_inner(printed, n.Xu)), std::abs(minkowski_inner(printed, n.Xv)));
        cmp.push_back(e);
    }
    r["normal_comparison"] = cmp;

    auto coef_scale = [](const CurveL3& curve) {
        const CurveL3 dc = curve.derivative();
        double m = 1.0;
        for (int k = 0; k < 3; ++k) m = std::max(m, dc.local(k).max_abs_coeff());
        return m * m;
    };
    bool ok = true;
    r["checks"] = checks_json({{"lightlike_psi", diag.psi_defect, 1e-12 * coef_scale(pair.psi)},
                               {"lightlike_phi", diag.phi_defect, 1e-12 * coef_scale(pair.phi)},
                               {"reconstruction", diag.reconstruction_error, 1e-12 * position_scale(s)},
                               {"minimality", diag.max_rel_h, c.tol.value_or(kSolveHTol)},
                               {"normal_independence", diag.normal_independence, 1e-12}},
                              ok);
    r["passed"] = ok;
    write_report(c, r);
    log << "bc: " << s.size() << " nodes, lightlike defects " << g17(diag.psi_defect) << " / " << g17(diag.phi_defect)
        << ", max |H| = " << g17(diag.max_abs_h) << (ok ? "" : " (CHECK FAILED)") << "\n";
    return ok ? exit_ok : exit_check;
}

int cmd_verify(const RunConfig& c, std::ostream& log) {
    if (!fs::exists(c.input)) throw FileNotFound("surface file not found: " + c.input);
    const SurfaceSample s = sample_from_csv_rows(parse_surface_csv(read_text(c.input)));
    const double tol = c.tol.value_or(kVerifyTol);
    const FundamentalForms forms = fundamental_forms(s);
    const MinimalityStats mh = minimality(forms);

    Json r = report_header(c, false);
    r["nodes_with_stencil"] = s.size();
    r["max_abs_H"] = mh.max_abs_h;
    r["max_rel_H"] = mh.max_rel_h;
    std::vector<Check> checks{{"minimality", mh.max_rel_h, tol}};

    auto residual_json = [&](const HeightField& h) {
        const auto R = born_infeld_residual(h);
        const auto S = born_infeld_scale(h);
        double max_abs = 0, max_rel = 0;
        std::size_t counted = 0;
        for (std::size_t k = 0; k < R.size(); ++k) {
            if (!h.valid[k]) continue;
            ++counted;
            max_abs = std::max(max_abs, std::abs(R[k]));
            max_rel = std::max(max_rel, std::abs(R[k]) / S[k]);
        }
        checks.push_back({"born_infeld_residual", max_rel, tol});
        return Json{{"max_abs", max_abs}, {"max_rel", max_rel}, {"nodes", counted}};
    };

    const auto causal = causal_classify(s);
    const auto spacelike = std::count(causal.begin(), causal.end(), SurfaceCausal::spacelike);
    const auto timelike = std::count(causal.begin(), causal.end(), SurfaceCausal::timelike);
    r["causal"] = causal_counts(causal);
    std::optional<TimelikePlane> plane;
    if (spacelike > timelike) {
        // Spacelike surfaces are graphs z = phi(x, y) of the maximal surface equation.
        r["graph_plane"] = "xy";
        r["born_infeld_residual"] = residual_json(graph_jets_xy(s));
    } else {
        try {
            check_projection_injective(s, TimelikePlane::yz());
            plane = TimelikePlane::yz();
        } catch (const NotInjective&) {
            plane = find_graph_plane(s, 16);
        }
        if (plane) {
            r["graph_plane"] = {{"b1", vec_json(plane->b1())}, {"b2", vec_json(plane->b2())}, {"b3", vec_json(plane->b3())}};
            r["born_infeld_residual"] = residual_json(graph_jets(s, *plane));
        } else {
            r["graph_plane"] = nullptr;
            r["born_infeld_residual"] = nullptr;
        }
    }
    bool ok = true;
    r["checks"] = checks_json(checks, ok);
    r["passed"] = ok;
    prepare_out(c);
    write_report(c, r);
    log << "verify: max |H| = " << g17(mh.max_abs_h)
        << (r["born_infeld_residual"].is_null() ? std::string(", no graph plane")
                                                : ", residual " + g17(r["born_infeld_residual"]["max_abs"].get<double>()))
        << (ok ? "" : " (CHECK FAILED)") << "\n";
    return ok ? exit_ok : exit_check;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
    try {
        if (cfg.command == "solve") return cmd_solve(cfg, log);
        if (cfg.command == "classify") return cmd_classify(cfg, log);
        if (cfg.command == "bc") return cmd_bc(cfg, log);
        if (cfg.command == "verify") return cmd_verify(cfg, log);
        log << kToolName << ": unknown command '" << cfg.command << "'\n";
        return exit_input;
    } catch (const InputError& e) {
        log << kToolName << ": " << e.kind() << ": " << e.what() << "\n";
        return exit_input;
    } catch (const DegeneracyError& e) {
        log << kToolName << ": " << e.kind() << ": " << e.what() << "\n";
        return exit_degenerate;
    } catch (const std::invalid_argument& e) {
        log << kToolName << ": invalid input: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        log << kToolName << ": internal error: " << e.what() << "\n";
        return exit_check;
    }
}

int cli_main(int argc, char** argv, std::ostream& log) {
    CLI::App app{"Björling and Barbishov-Chernikov surface toolkit", kToolName};
    RunConfig cfg;
    std::vector<std::string> domain_words;
    std::string grid_text, criterion_text = "pqd";
    double tol = 0;
    app.add_option("command", cfg.command, "solve | classify | bc | verify")
        ->required()
        ->check(CLI::IsMember({"solve", "classify", "bc", "verify"}));
    app.add_option("file", cfg.input, "strip TOML, B-C TOML or surface CSV")->required();
    auto* dom = app.add_option("--domain", domain_words, "rect u0 u1 v0 v1 | diamond M")->expected(2, 5)->type_name("SHAPE ARGS");
    auto* grid = app.add_option("--grid", grid_text, "NxM sample counts");
    app.add_option("--criterion", criterion_text, "pqd | pmatrix")->check(CLI::IsMember({"pqd", "pmatrix"}));
    auto* tol_opt = app.add_option("--tol", tol, "check tolerance override");
    app.add_option("--out", cfg.out_dir, "output directory");
    try {
        app.parse(argc, argv);
        if (dom->count()) cfg.domain = parse_domain_arg(domain_words);
        if (grid->count()) cfg.grid = parse_grid_arg(grid_text);
        cfg.criterion = criterion_text == "pmatrix" ? Criterion::p_matrix : Criterion::pqd;
        if (tol_opt->count()) {
            if (!(tol > 0) || !std::isfinite(tol)) throw ParseError("--tol must be a positive number");
            cfg.tol = tol;
        }
    } catch (const CLI::CallForHelp&) {
        log << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        log << kToolName << ": " << e.what() << "\n" << app.help();
        return exit_input;
    } catch (const ParseError& e) {
        log << kToolName << ": " << e.what() << "\n";
        return exit_input;
    }
    return run_command(cfg, log);
}

}  // namespace bjbi
