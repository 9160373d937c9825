#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "bjbi/errors.hpp"
#include "bjbi/strips.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjbi;

namespace {

StripData line_data(Vec3L n, SurfaceVariant v = SurfaceVariant::timelike_surface) {
    StripData d;
    d.c = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 1});
    d.n = CurveL3::polynomial(RealPoly{n.x}, RealPoly{n.y}, RealPoly{n.z});
    d.interval = {-1, 1};
    d.variant = v;
    return d;
}

std::string fixture(const char* name) { return std::string(BJBI_FIXTURES) + "/" + name; }

bool has_failed(const ValidationReport& r, const std::string& name) {
    const auto f = r.failed();
    return std::find(f.begin(), f.end(), name) != f.end();
}

}  // namespace

TEST_CASE("validate: timelike line with spacelike normal") {
    const auto r = validate_strip(line_data({1, 0, 0}));
    CHECK(r.ok());
    REQUIRE(r.curve_character.has_value());
    CHECK(*r.curve_character == Causal::timelike);
    const Strip s(line_data({1, 0, 0}));
    CHECK(s.curve_character() == Causal::timelike);
    CHECK_FALSE(s.approximate());
}

TEST_CASE("validate: spacelike line with timelike normal, spacelike surface") {
    StripData d;
    d.c = CurveL3::polynomial(RealPoly{}, RealPoly{0, 1}, RealPoly{});
    d.n = CurveL3::polynomial(RealPoly{std::sinh(1.0)}, RealPoly{}, RealPoly{std::cosh(1.0)});
    d.interval = {-1, 1};
    d.variant = SurfaceVariant::spacelike_surface;
    const auto r = validate_strip(d);
    CHECK(r.ok());
    CHECK(*r.curve_character == Causal::spacelike);
}

TEST_CASE("validate: lightlike curve is rejected") {
    StripData d = line_data({0, 1, 0});
    d.c = CurveL3::polynomial(RealPoly{0, 1}, RealPoly{}, RealPoly{0, 1});
    const auto r = validate_strip(d);
    CHECK_FALSE(r.ok());
    CHECK_THROWS_AS(Strip{d}, InvalidStrip);
    try {
        Strip s(d);
    } catch (const InvalidStrip& e) {
        CHECK_FALSE(e.failed_checks().empty());
    }
}

TEST_CASE("validate: individual failures are named") {
    CHECK(has_failed(validate_strip(line_data({2, 0, 0})), "unit_spacelike_normal"));
    CHECK(has_failed(validate_strip(line_data({0, 0, 1})), "normal_orthogonal_to_tangent"));
    CHECK(has_failed(validate_strip(line_data({0, 1, 0}, SurfaceVariant::spacelike_surface)), "unit_timelike_normal"));
    StripData rev = line_data({1, 0, 0});
    rev.interval = {1, -1};
    CHECK(has_failed(validate_strip(rev), "interval"));
    // c' vanishes at t = 0
    StripData sing = line_data({1, 0, 0});
    sing.c = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 0, 0, 1});
    CHECK_FALSE(validate_strip(sing).ok());
    // timelike c with a timelike normal cannot be a spacelike surface
    StripData sp = line_data({0, 0, 1}, SurfaceVariant::spacelike_surface);
    CHECK_FALSE(validate_strip(sp).ok());
}

TEST_CASE("validate: causal character must be constant") {
    // c' = (1.5 t, 0, 1) is timelike for |t| < 2/3 and spacelike beyond.
    StripData d;
    d.c = CurveL3::polynomial(RealPoly{0, 0, 0.75}, RealPoly{}, RealPoly{0, 1});
    d.n = CurveL3::polynomial(RealPoly{}, RealPoly{1}, RealPoly{});
    d.interval = {-1, 1};
    CHECK(has_failed(validate_strip(d), "constant_causal_character"));
    d.interval = {-0.5, 0.5};
    CHECK(validate_strip(d).ok());
}

TEST_CASE("random valid strips pass and their perturbations fail (property)") {
    oracle::Gen g(31);
    for (int it = 0; it < 60; ++it) {
        const auto variant = it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface;
        const StripData d = gen::random_strip_data(g, variant);
        CHECK(validate_strip(d).ok());
        CHECK_NOTHROW(Strip{d});

        // Scale the normal: breaks unit length but keeps orthogonality.
        StripData scaled = d;
        scaled.n = d.n.scaled(1.0 + 1e-6);
        CHECK_THROWS_AS(Strip{scaled}, InvalidStrip);

        // Bend the curve off the normal plane.
        StripData bent = d;
        const Vec3L nm = d.n(0.0);
        bent.c = d.c + CurveL3::polynomial(RealPoly{0, 1e-4 * nm.x}, RealPoly{0, 1e-4 * nm.y}, RealPoly{0, -1e-4 * nm.z});
        CHECK_THROWS_AS(Strip{bent}, InvalidStrip);
    }
}

TEST_CASE("geodesic strip of a helix (Taylor mode)") {
    // c = (cos t, sin t, sqrt2 t) expanded about 0 to high order.
    const double r2 = std::sqrt(2.0);
    std::vector<double> cx, sx;
    double fact = 1.0;
    for (int k = 0; k <= 24; ++k) {
        if (k > 0) fact *= k;
        const double sgn = (k / 2) % 2 ? -1.0 : 1.0;
        cx.push_back(k % 2 == 0 ? sgn / fact : 0.0);
        sx.push_back(k % 2 == 1 ? sgn / fact : 0.0);
    }
    const CurveL3 c = CurveL3::polynomial(RealPoly(cx), RealPoly(sx), RealPoly{0, r2}).as_taylor(0.0, 24);
    const Strip s = geodesic_strip(c, {-1, 1});
    CHECK(s.approximate());
    CHECK(validate_strip(s.data()).ok());
    for (double t : {-1.0, -0.4, 0.0, 0.3, 1.0}) {
        const Vec3L n = s.n()(t);
        CHECK(n.x == doctest::Approx(-std::cos(t)).epsilon(1e-9));
        CHECK(n.y == doctest::Approx(-std::sin(t)).epsilon(1e-9));
        CHECK(std::abs(n.z) < 1e-9);
    }
}

TEST_CASE("geodesic strip of a polynomial curve with constant |c''| is exact") {
    // c' = (t, t^2/2, 1 + t^2/2) has <c', c'> = -1 identically and
    // c'' = (1, t, t) has <c'', c''> = 1, so the normal is c'' itself.
    const CurveL3 c = CurveL3::polynomial(RealPoly{0, 0, 0.5}, RealPoly{0, 0, 0, 1.0 / 6.0}, RealPoly{0, 1, 0, 1.0 / 6.0});
    const Strip s = geodesic_strip(c, {-1, 1});
    CHECK_FALSE(s.approximate());
    CHECK(validate_strip(s.data()).ok());
    for (double t : {-1.0, 0.0, 0.6}) {
        const Vec3L n = s.n()(t);
        CHECK(n.x == doctest::Approx(1.0));
        CHECK(n.y == doctest::Approx(t));
        CHECK(n.z == doctest::Approx(t));
    }
    // c' = (t, t^2, 1 + t^2) is not unit speed.
    const CurveL3 slow = CurveL3::polynomial(RealPoly{0, 0, 0.5}, RealPoly{0, 0, 0, 1.0 / 3.0}, RealPoly{0, 1, 0, 1.0 / 3.0});
    CHECK_THROWS_AS(geodesic_strip(slow, {-1, 1}), NotConstantSpeed);
}

TEST_CASE("geodesic strip errors") {
    const CurveL3 line = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 1});
    CHECK_THROWS_AS(geodesic_strip(line, {-1, 1}), InflectionPoint);
    const CurveL3 fast = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 2});
    CHECK_THROWS_AS(geodesic_strip(fast, {-1, 1}), NotConstantSpeed);
}

TEST_CASE("load the line fixture") {
    const Strip s = load_strip(fixture("line_x_normal.toml"));
    CHECK(s.c().local(2) == RealPoly{0, 1});
    CHECK(s.c().local(0).is_zero());
    CHECK(s.n().local(0) == RealPoly{1});
    CHECK(s.interval() == Interval{-1, 1});
    CHECK(s.variant() == SurfaceVariant::timelike_surface);
}

TEST_CASE("parse errors") {
    const std::string two_comp = R"(variant = "timelike_surface"
interval = [-1.0, 1.0]
[curve]
x = [0.0]
z = [0.0, 1.0]
[normal]
x = [1.0]
y = [0.0]
z = [0.0]
)";
    CHECK_THROWS_AS(parse_strip(two_comp), ParseError);
    CHECK_THROWS_AS(parse_strip("variant = \"nope\"\ninterval = [0.0, 1.0]\n"), ParseError);
    CHECK_THROWS_AS(parse_strip("variant = \"timelike_surface\"\ninterval = [0.0, 1.0, 2.0]\n"), ParseError);
    CHECK_THROWS_AS(parse_strip("variant = timelike_surface\n"), ParseError);
    CHECK_THROWS_AS(parse_strip("interval = [0.0, 1.0\n"), ParseError);
    CHECK_THROWS_AS(load_strip("/nonexistent/strip.toml"), FileNotFound);
}

TEST_CASE("spacelike variant with a spacelike normal is an invalid strip") {
    const std::string text = R"(variant = "spacelike_surface"
interval = [-1.0, 1.0]
[curve]
x = [0.0]
y = [0.0, 1.0]
z = [0.0]
[normal]
x = [0.0]
y = [1.0]
z = [0.0]
)";
    CHECK_THROWS_AS(parse_strip(text), InvalidStrip);
}

TEST_CASE("inline tables, comments and several pairs per line") {
    const std::string text = R"(variant = "timelike_surface"   # the usual case
interval = [-1.0, 1.0,]
[curve]  x = [0.0]  y = [0.0]  z = [0.0, 1.0]
[normal] x = [1.0]  y = [0.0]  z = [0.0]
)";
    const Strip s = parse_strip(text);
    CHECK(s.n().local(0) == RealPoly{1});
}

TEST_CASE("save and load round trip (property)") {
    oracle::Gen g(32);
    const auto dir = std::filesystem::temp_directory_path() / "bjbi_strip_rt";
    std::filesystem::create_directories(dir);
    for (int it = 0; it < 20; ++it) {
        const Strip s(gen::random_strip_data(g, it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface));
        const auto path = dir / ("s" + std::to_string(it) + ".toml");
        save_strip(s, path);
        const Strip back = load_strip(path);
        CHECK(back.data().c == s.data().c);
        CHECK(back.data().n == s.data().n);
        CHECK(back.interval() == s.interval());
        CHECK(back.variant() == s.variant());
        CHECK(strip_to_toml(back.data()) == strip_to_toml(s.data()));
    }
}

TEST_CASE("Taylor-mode strips round trip too") {
    const CurveL3 c = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 1}).as_taylor(0.25, 8);
    const CurveL3 n = CurveL3::polynomial(RealPoly{1}, RealPoly{}, RealPoly{}).as_taylor(0.25, 8);
    const Strip s(StripData{c, n, {-1, 1}, SurfaceVariant::timelike_surface});
    CHECK(s.approximate());
    const Strip back = parse_strip(strip_to_toml(s.data()));
    CHECK(back.approximate());
    CHECK(back.c().center() == 0.25);
    CHECK(back.c()(0.5) == c(0.5));
}

TEST_CASE("curve algebra") {
    const CurveL3 a = CurveL3::polynomial(RealPoly{1, 2}, RealPoly{0, 0, 1}, RealPoly{3});
    CHECK(a(2.0) == Vec3L{5, 4, 3});
    CHECK(a.derivative()(2.0) == Vec3L{2, 4, 0});
    CHECK(a.antiderivative_from(1.0)(1.0) == Vec3L{0, 0, 0});
    const CurveL3 r = a.recentered(0.5);
    CHECK(r(1.7).x == doctest::Approx(a(1.7).x));
    CHECK(r(1.7).y == doctest::Approx(a(1.7).y));
    const CurveL3 e1 = CurveL3::polynomial(RealPoly{1}, RealPoly{}, RealPoly{});
    const CurveL3 e2 = CurveL3::polynomial(RealPoly{}, RealPoly{1}, RealPoly{});
    CHECK(lorentz_cross(e1, e2)(0.3) == Vec3L{0, 0, -1});
    CHECK(lorentz_inner(a, a)(2.0) == doctest::Approx(25 + 16 - 9));
}
