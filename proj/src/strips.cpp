#include "bjbi/strips.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bjbi/errors.hpp"
#include "toml_lite.hpp"

namespace bjbi {

// ---------------------------------------------------------------------------
// CurveL3

CurveL3 CurveL3::polynomial(RealPoly x, RealPoly y, RealPoly z) {
    return from_local({std::move(x), std::move(y), std::move(z)}, 0.0, std::nullopt);
}

CurveL3 CurveL3::taylor(const TaylorSeries& x, const TaylorSeries& y, const TaylorSeries& z) {
    if (x.center != y.center || x.center != z.center || x.order != y.order || x.order != z.order)
        throw std::invalid_argument("Taylor components must share center and order");
    return from_local({x.coeffs, y.coeffs, z.coeffs}, x.center, x.order);
}

CurveL3 CurveL3::from_local(std::array<RealPoly, 3> local, double center, std::optional<unsigned> order) {
    CurveL3 c;
    if (order)
        for (auto& p : local) p = p.truncated(*order);
    c.local_ = std::move(local);
    c.center_ = center;
    c.order_ = order;
    return c;
}

Vec3L CurveL3::operator()(double t) const {
    const double s = t - center_;
    return {local_[0](s), local_[1](s), local_[2](s)};
}

CurveL3 CurveL3::derivative() const {
    return from_local({local_[0].derive(), local_[1].derive(), local_[2].derive()}, center_, order_);
}

CurveL3 CurveL3::antiderivative_from(double t0) const {
    const double s0 = t0 - center_;
    return from_local({local_[0].antiderive_from(s0), local_[1].antiderive_from(s0), local_[2].antiderive_from(s0)},
                      center_, order_);
}

CurveL3 CurveL3::recentered(double center) const {
    if (center == center_) return *this;
    if (approximate()) throw std::invalid_argument("cannot re-expand a Taylor-mode curve about a new center");
    const double d = center - center_;
    return from_local({local_[0].shifted(d), local_[1].shifted(d), local_[2].shifted(d)}, center, std::nullopt);
}

CurveL3 CurveL3::as_taylor(double center, unsigned order) const {
    if (approximate()) {
        if (center != center_) throw std::invalid_argument("cannot re-expand a Taylor-mode curve about a new center");
        return from_local(local_, center_, std::min(order, *order_));
    }
    CurveL3 r = recentered(center);
    return from_local(r.local_, center, order);
}

CurveL3 CurveL3::scaled(double s) const {
    return from_local({s * local_[0], s * local_[1], s * local_[2]}, center_, order_);
}

CurveL3 operator+(const CurveL3& a, const CurveL3& b) {
    auto [x, y] = align(a, b);
    return CurveL3::from_local({x.local_[0] + y.local_[0], x.local_[1] + y.local_[1], x.local_[2] + y.local_[2]},
                               x.center_, x.order_);
}

std::pair<CurveL3, CurveL3> align(const CurveL3& a, const CurveL3& b) {
    if (!a.approximate() && !b.approximate()) {
        if (a.center() == b.center()) return {a, b};
        return {a, b.recentered(a.center())};
    }
    if (a.approximate() && b.approximate()) {
        if (a.center() != b.center()) throw std::invalid_argument("Taylor-mode curves with different centers");
        unsigned order = std::min(*a.order(), *b.order());
        return {a.as_taylor(a.center(), order), b.as_taylor(b.center(), order)};
    }
    const CurveL3& t = a.approximate() ? a : b;
    CurveL3 ea = a.as_taylor(t.center(), *t.order());
    CurveL3 eb = b.as_taylor(t.center(), *t.order());
    return {ea, eb};
}

namespace {

RealPoly truncate_to(const RealPoly& p, std::optional<unsigned> order) {
    return order ? p.truncated(*order) : p;
}

}  // namespace

RealPoly lorentz_inner(const CurveL3& a, const CurveL3& b) {
    auto [x, y] = align(a, b);
    RealPoly r = x.local(0) * y.local(0) + x.local(1) * y.local(1) - x.local(2) * y.local(2);
    return truncate_to(r, x.order());
}

CurveL3 lorentz_cross(const CurveL3& a, const CurveL3& b) {
    auto [x, y] = align(a, b);
    auto c = lorentz_cross_components(x.local(0), x.local(1), x.local(2), y.local(0), y.local(1), y.local(2));
    return CurveL3::from_local(c, x.center(), x.order());
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(SurfaceVariant v) {
    return v == SurfaceVariant::timelike_surface ? "timelike_surface" : "spacelike_surface";
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::vector<std::string> ValidationReport::failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

namespace {

/// Largest coefficient of p, and its index.
std::pair<double, double> worst_coeff(const RealPoly& p) {
    double worst = 0.0, at = 0.0;
    auto cs = p.coeffs();
    for (std::size_t k = 0; k < cs.size(); ++k)
        if (std::abs(cs[k]) > worst) {
            worst = std::abs(cs[k]);
            at = static_cast<double>(k);
        }
    return {worst, at};
}

std::vector<double> sample_points(Interval iv) {
    std::vector<double> ts;
    ts.reserve(kStripSampleCount + 2);
    ts.push_back(iv.t0);
    for (int k = 1; k <= kStripSampleCount; ++k)
        ts.push_back(iv.t0 + (iv.t1 - iv.t0) * k / (kStripSampleCount + 1));
    ts.push_back(iv.t1);
    return ts;
}

constexpr double kIdentityTol = 1e-12;

}  // namespace

ValidationReport validate_strip(const StripData& s) {
    ValidationReport rep;
    auto add = [&](std::string name, bool ok, double worst = 0.0, double at = 0.0) {
        rep.checks.push_back({std::move(name), ok, worst, at});
    };

    const bool interval_ok = std::isfinite(s.interval.t0) && std::isfinite(s.interval.t1) && s.interval.t0 < s.interval.t1;
    add("interval", interval_ok, interval_ok ? 0.0 : s.interval.t0 - s.interval.t1);

    CurveL3 dc = s.c.derivative();
    try {
        (void)align(dc, s.n);
        add("common_expansion", true);
    } catch (const std::invalid_argument&) {
        add("common_expansion", false);
        return rep;
    }

    const double sign = s.variant == SurfaceVariant::timelike_surface ? 1.0 : -1.0;
    {
        RealPoly q = lorentz_inner(s.n, s.n) - RealPoly::constant(sign);
        const double scale = std::max(1.0, std::pow(std::max({s.n.local(0).max_abs_coeff(), s.n.local(1).max_abs_coeff(),
                                                               s.n.local(2).max_abs_coeff()}), 2));
        auto [w, at] = worst_coeff(q);
        add(sign > 0 ? "unit_spacelike_normal" : "unit_timelike_normal", w <= kIdentityTol * scale, w, at);
    }
    {
        RealPoly q = lorentz_inner(dc, s.n);
        double mc = 0.0, mn = 0.0;
        for (int k = 0; k < 3; ++k) {
            mc = std::max(mc, dc.local(k).max_abs_coeff());
            mn = std::max(mn, s.n.local(k).max_abs_coeff());
        }
        auto [w, at] = worst_coeff(q);
        add("normal_orthogonal_to_tangent", w <= kIdentityTol * std::max(1.0, mc * mn), w, at);
    }

    if (!interval_ok) return rep;

    double min_speed = INFINITY, min_speed_t = 0.0;
    int n_space = 0, n_time = 0, n_light = 0;
    double light_t = 0.0, worst_causal = 0.0;
    for (double t : sample_points(s.interval)) {
        Vec3L v = dc(t);
        double e = euclid_dot(v, v);
        if (e < min_speed) { min_speed = e; min_speed_t = t; }
        switch (causal_character(v)) {
            case Causal::spacelike: ++n_space; break;
            case Causal::timelike: ++n_time; break;
            case Causal::lightlike:
                if (n_light++ == 0) light_t = t;
                worst_causal = std::max(worst_causal, 1.0);
                break;
        }
    }
    add("regular_curve", min_speed > 1e-12, min_speed, min_speed_t);

    const bool constant = n_light == 0 && (n_space == 0 || n_time == 0);
    add("constant_causal_character", constant, static_cast<double>(n_light + std::min(n_space, n_time)), light_t);
    if (constant) rep.curve_character = n_time > 0 ? Causal::timelike : Causal::spacelike;

    if (s.variant == SurfaceVariant::spacelike_surface)
        add("spacelike_curve_for_spacelike_surface", rep.curve_character == Causal::spacelike);
    return rep;
}

Strip::Strip(StripData data) : data_(std::move(data)) {
    ValidationReport rep = validate_strip(data_);
    if (!rep.ok()) {
        std::string msg = "invalid strip:";
        for (const auto& f : rep.failed()) msg += " " + f;
        throw InvalidStrip(msg, rep.failed());
    }
    character_ = *rep.curve_character;
}

// ---------------------------------------------------------------------------
// Geodesic strips

Strip geodesic_strip(const CurveL3& c, Interval interval) {
    if (!(interval.t0 < interval.t1)) throw std::invalid_argument("empty interval");
    const CurveL3 d1 = c.derivative();
    const CurveL3 d2 = d1.derivative();
    const RealPoly accel_sq = lorentz_inner(d2, d2);

    for (double t : sample_points(interval)) {
        Vec3L v = d1(t);
        double speed = minkowski_inner(v, v);
        if (std::abs(speed + 1.0) > 1e-8)
            throw NotConstantSpeed("curve is not unit-speed timelike at t = " + toml_lite::format_double(t) +
                                   " (<c',c'> = " + toml_lite::format_double(speed) + ")");
        Vec3L a = d2(t);
        if (minkowski_inner(a, a) <= default_causal_tol(a))
            throw InflectionPoint("c'' is not spacelike at t = " + toml_lite::format_double(t));
    }

    if (accel_sq.is_constant()) {
        // Constant |c''|: the normal is c'' rescaled and stays exact.
        const double inv = 1.0 / std::sqrt(accel_sq.coeff(0));
        return Strip(StripData{c, d2.scaled(inv), interval, SurfaceVariant::timelike_surface});
    }

    const double center = c.approximate() ? c.center() : interval.mid();
    const unsigned order = c.approximate() ? *c.order() : kGeodesicTaylorOrder;
    const CurveL3 ct = c.as_taylor(center, order);
    const CurveL3 a = ct.derivative().derivative();
    const TaylorSeries g{lorentz_inner(a, a), center, order};
    const TaylorSeries inv_norm = series_pow(g, -0.5);
    std::array<RealPoly, 3> n;
    for (int k = 0; k < 3; ++k)
        n[static_cast<std::size_t>(k)] = (TaylorSeries{a.local(k), center, order} * inv_norm).coeffs;
    return Strip(StripData{ct, CurveL3::from_local(n, center, order), interval, SurfaceVariant::timelike_surface});
}

// ---------------------------------------------------------------------------
// File format

namespace {

CurveL3 curve_from_table(const toml_lite::Table& t, const std::string& where, double center,
                         std::optional<unsigned> order) {
    for (const auto& [key, _] : t)
        if (key != "x" && key != "y" && key != "z")
            throw ParseError(where + ": unexpected key '" + key + "' (curves have exactly x, y, z)");
    std::array<RealPoly, 3> comps;
    const char* names[3] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
        if (!toml_lite::find(t, names[k]))
            throw ParseError(where + ": curve needs three components x, y, z (missing '" + names[k] + "')");
        comps[static_cast<std::size_t>(k)] = RealPoly(toml_lite::get_array(t, names[k], where));
    }
    return CurveL3::from_local(comps, center, order);
}

}  // namespace

Strip parse_strip(const std::string& text) {
    const auto doc = toml_lite::parse(text);
    const auto& root = doc.table("");
    for (const auto& [name, _] : doc.tables)
        if (!name.empty() && name != "curve" && name != "normal") throw ParseError("unexpected table [" + name + "]");

    StripData s;
    const std::string variant = toml_lite::get_string(root, "variant", "strip");
    if (variant == "timelike_surface")
        s.variant = SurfaceVariant::timelike_surface;
    else if (variant == "spacelike_surface")
        s.variant = SurfaceVariant::spacelike_surface;
    else
        throw ParseError("strip: unknown variant '" + variant + "'");

    const auto iv = toml_lite::get_array(root, "interval", "strip");
    if (iv.size() != 2) throw ParseError("strip: interval must have two entries");
    s.interval = {iv[0], iv[1]};

    double center = 0.0;
    std::optional<unsigned> order;
    if (toml_lite::find(root, "mode")) {
        const std::string mode = toml_lite::get_string(root, "mode", "strip");
        if (mode == "taylor") {
            center = toml_lite::get_number(root, "center", "strip");
            const double o = toml_lite::get_number(root, "order", "strip");
            if (o < 0 || o != std::floor(o) || o > 1000) throw ParseError("strip: order must be a small natural number");
            order = static_cast<unsigned>(o);
        } else if (mode != "polynomial") {
            throw ParseError("strip: unknown mode '" + mode + "'");
        }
    }
    s.c = curve_from_table(doc.table("curve"), "[curve]", center, order);
    s.n = curve_from_table(doc.table("normal"), "[normal]", center, order);
    return Strip(std::move(s));
}

Strip load_strip(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("strip file not found: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_strip(ss.str());
}

std::string strip_to_toml(const StripData& s) {
    auto arr = [](const RealPoly& p) {
        auto cs = p.coeffs();
        return toml_lite::format_array(cs.empty() ? std::vector<double>{0.0} : std::vector<double>(cs.begin(), cs.end()));
    };
    std::ostringstream os;
    os << "variant = \"" << to_string(s.variant) << "\"\n";
    os << "interval = " << toml_lite::format_array({s.interval.t0, s.interval.t1}) << "\n";
    auto [c, n] = align(s.c, s.n);
    if (c.approximate()) {
        os << "mode = \"taylor\"\n";
        os << "center = " << toml_lite::format_double(c.center()) << "\n";
        os << "order = " << *c.order() << "\n";
    } else if (c.center() != 0.0) {
        c = c.recentered(0.0);
        n = n.recentered(0.0);
    }
    os << "\n[curve]\n";
    os << "x = " << arr(c.local(0)) << "\ny = " << arr(c.local(1)) << "\nz = " << arr(c.local(2)) << "\n";
    os << "\n[normal]\n";
    os << "x = " << arr(n.local(0)) << "\ny = " << arr(n.local(1)) << "\nz = " << arr(n.local(2)) << "\n";
    return os.str();
}

void save_strip(const Strip& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << strip_to_toml(s.data());
}

}  // namespace bjbi
