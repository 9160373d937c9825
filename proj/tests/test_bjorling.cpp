#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bjbi/bjorling.hpp"
#include "bjbi/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjbi;

namespace {

std::string fixture(const char* name) { return std::string(BJBI_FIXTURES) + "/" + name; }

Strip line_strip(Vec3L n) {
    return Strip(StripData{CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 1}),
                           CurveL3::polynomial(RealPoly{n.x}, RealPoly{n.y}, RealPoly{n.z}),
                           {-1, 1},
                           SurfaceVariant::timelike_surface});
}

Strip boosted_strip(double gamma = 1.0) {
    return Strip(StripData{CurveL3::polynomial(RealPoly{}, RealPoly{0, 1}, RealPoly{}),
                           CurveL3::polynomial(RealPoly{std::sinh(gamma)}, RealPoly{}, RealPoly{std::cosh(gamma)}),
                           {-1, 1},
                           SurfaceVariant::spacelike_surface});
}

double scale_of(const SurfaceSample& s) {
    double m = 1.0;
    for (const auto& n : s.nodes) m = std::max(m, oracle::norm(n.X));
    return m;
}

}  // namespace

TEST_CASE("holomorphic data of the x-normal line") {
    const HolomorphicData h = build_holomorphic_data(line_strip({1, 0, 0}));
    CHECK(h.kind == ScalarKind::split);
    CHECK(h.data_axis == DataAxis::u_axis);
    for (double t : {-1.0, 0.0, 0.5}) {
        CHECK(h.integrand(t) == Vec3L{0, -1, 0});
        CHECK(h.c(t) == Vec3L{0, 0, t});
    }
    CHECK(h.integral(h.interval.t0) == Vec3L{0, 0, 0});
}

TEST_CASE("holomorphic data of the boosted spacelike line") {
    const HolomorphicData h = build_holomorphic_data(boosted_strip());
    CHECK(h.kind == ScalarKind::complex);
    CHECK(h.data_axis == DataAxis::u_axis);
    const Vec3L expect = oracle::cross({std::sinh(1.0), 0, std::cosh(1.0)}, {0, 1, 0});
    CHECK(oracle::norm(expect - Vec3L{-std::cosh(1.0), 0, -std::sinh(1.0)}) < 1e-15);
    CHECK(oracle::norm(h.integrand(0.3) - expect) < 1e-15);
}

TEST_CASE("integral vanishes at the left endpoint (property)") {
    oracle::Gen g(41);
    for (int it = 0; it < 30; ++it) {
        const Strip s(gen::random_strip_data(g, it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface));
        const HolomorphicData h = build_holomorphic_data(s);
        CHECK(oracle::norm(h.integral(s.interval().t0)) <= 1e-14);
    }
}

TEST_CASE("x-normal line solves to the plane (0, -v, u) exactly") {
    const SurfaceSample s = solve(line_strip({1, 0, 0}), Domain::rect(-1, 1, -1, 1, 21, 21));
    REQUIRE(s.size() == 441);
    for (const auto& n : s.nodes) {
        CHECK(n.X == Vec3L{0, -n.v, n.u});
        CHECK(std::abs(std::abs(n.N.x) - 1.0) == 0.0);
        CHECK(n.N.y == 0.0);
        CHECK(n.N.z == 0.0);
        CHECK(n.Xu == Vec3L{0, 0, 1});
        CHECK(n.Xv == Vec3L{0, -1, 0});
    }
    CHECK(s.nodes.front().N == Vec3L{1, 0, 0});
}

TEST_CASE("boosted spacelike line solves to (v cosh1, u, v sinh1)") {
    const SurfaceSample s = solve(boosted_strip(), Domain::rect(-1, 1, -1, 1, 21, 21));
    for (const auto& n : s.nodes) {
        const Vec3L expect{n.v * std::cosh(1.0), n.u, n.v * std::sinh(1.0)};
        CHECK(oracle::norm(n.X - expect) <= 1e-15 * 4);
    }
}

TEST_CASE("Björling interpolation on random polynomial strips (property)") {
    oracle::Gen g(42);
    for (int it = 0; it < 40; ++it) {
        const auto variant = it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface;
        const Strip strip(gen::random_strip_data(g, variant, it % 4 == 1 ? 1 : 0));
        const SurfaceSample s = solve(strip, Domain::rect(-0.3, 0.3, -0.3, 0.3, 9, 9));
        REQUIRE(s.axis.size() == static_cast<std::size_t>(kDefaultAxisSamples));
        double sc = scale_of(s);
        for (const auto& a : s.axis) {
            const double t = s.data_axis == DataAxis::v_axis ? a.v : a.u;
            const Vec3L c = strip.c()(t);
            sc = std::max(sc, oracle::norm(c));
            CHECK(oracle::norm(a.X - c) <= 1e-12 * sc);
            REQUIRE_FALSE(a.lightlike);
            const Vec3L n = strip.n()(t);
            CHECK(std::min(oracle::norm(a.N - n), oracle::norm(a.N + n)) <= 1e-9);
            CHECK(oracle::norm(a.N - static_cast<double>(s.normal_sign) * n) <= 1e-9);
        }
    }
}

TEST_CASE("normals are unit and orthogonal to the tangents (property)") {
    oracle::Gen g(43);
    for (int it = 0; it < 20; ++it) {
        const Strip strip(gen::random_strip_data(g, it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface));
        const SurfaceSample s = solve(strip, Domain::rect(-0.4, 0.4, -0.4, 0.4, 11, 11));
        const double sc = scale_of(s);
        for (const auto& n : s.nodes) {
            if (n.lightlike) continue;
            CHECK(std::abs(std::abs(oracle::inner(n.N, n.N)) - 1.0) <= 1e-10);
            CHECK(std::abs(oracle::inner(n.N, n.Xu)) <= 1e-10 * sc);
            CHECK(std::abs(oracle::inner(n.N, n.Xv)) <= 1e-10 * sc);
        }
    }
}

TEST_CASE("independent mean curvature vanishes on solutions (property)") {
    oracle::Gen g(44);
    for (int it = 0; it < 20; ++it) {
        const Strip strip(gen::random_strip_data(g, it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface));
        const SurfaceSample s = solve(strip, Domain::rect(-0.4, 0.4, -0.4, 0.4, 9, 9));
        for (const auto& n : s.nodes) {
            const double E = oracle::inner(n.Xu, n.Xu), F = oracle::inner(n.Xu, n.Xv), G = oracle::inner(n.Xv, n.Xv);
            if (std::abs(E * G - F * F) < 1e-6) continue;
            const double H = oracle::mean_curvature(n.Xu, n.Xv, n.Xuu, n.Xuv, n.Xvv);
            const double sc = 1 + oracle::norm(n.Xuu) + oracle::norm(n.Xuv) + oracle::norm(n.Xvv);
            CHECK(std::abs(H) <= 1e-8 * sc / std::abs(E * G - F * F));
        }
    }
}

TEST_CASE("causal character of solutions follows the variant (property)") {
    oracle::Gen g(45);
    for (int it = 0; it < 20; ++it) {
        const auto variant = it % 2 ? SurfaceVariant::timelike_surface : SurfaceVariant::spacelike_surface;
        const Strip strip(gen::random_strip_data(g, variant));
        const SurfaceSample s = solve(strip, Domain::rect(-0.5, 0.5, -0.1, 0.1, 9, 5));
        for (const auto& a : s.axis) {
            const double d = oracle::inner(a.Xu, a.Xu) * oracle::inner(a.Xv, a.Xv) - std::pow(oracle::inner(a.Xu, a.Xv), 2);
            if (variant == SurfaceVariant::timelike_surface)
                CHECK(d < 0);
            else
                CHECK(d > 0);
        }
    }
}

TEST_CASE("exact partials match finite differences at second order") {
    const Strip strip = load_strip(fixture("parabola.toml"));
    const HolomorphicData h = build_holomorphic_data(strip);
    const oracle::Surface X = [&](double u, double v) { return evaluate_node(h, u, v).X; };
    for (auto [u, v] : {std::pair{0.3, -0.2}, {-0.7, 0.4}, {1.1, 0.9}}) {
        const SurfaceNode n = evaluate_node(h, u, v);
        auto err = [&](double step) {
            const auto p = oracle::fd_partials(X, u, v, step);
            return std::max({oracle::norm(p.Xu - n.Xu), oracle::norm(p.Xv - n.Xv), oracle::norm(p.Xuu - n.Xuu),
                             oracle::norm(p.Xuv - n.Xuv), oracle::norm(p.Xvv - n.Xvv)});
        };
        const double e1 = err(0.1), e2 = err(0.05);
        CHECK(e1 > 0);
        CHECK(oracle::contraction(e1, e2) >= 3.5);
        CHECK(e2 < 1e-2);
    }
}

TEST_CASE("timelike surface through a spacelike curve carries the data on the v axis") {
    // c = (0, t, 0) is spacelike; n = (1, 0, 0) is a unit spacelike normal.
    const Strip strip(StripData{CurveL3::polynomial(RealPoly{}, RealPoly{0, 1, 0.2}, RealPoly{0, 0, 0.1}),
                                CurveL3::polynomial(RealPoly{1}, RealPoly{}, RealPoly{}),
                                {-1, 1},
                                SurfaceVariant::timelike_surface});
    CHECK(strip.curve_character() == Causal::spacelike);
    const HolomorphicData h = build_holomorphic_data(strip);
    CHECK(h.data_axis == DataAxis::v_axis);
    const SurfaceSample s = solve(strip, Domain::rect(-0.5, 0.5, -1, 1, 11, 21));
    for (const auto& a : s.axis) {
        CHECK(a.u == 0.0);
        CHECK(oracle::norm(a.X - strip.c()(a.v)) <= 1e-14);
        CHECK(std::min(oracle::norm(a.N - strip.n()(a.v)), oracle::norm(a.N + strip.n()(a.v))) <= 1e-12);
    }
    for (const auto& n : s.nodes) {
        const double E = oracle::inner(n.Xu, n.Xu), F = oracle::inner(n.Xu, n.Xv), G = oracle::inner(n.Xv, n.Xv);
        if (std::abs(E * G - F * F) < 1e-6) continue;
        CHECK(std::abs(oracle::mean_curvature(n.Xu, n.Xv, n.Xuu, n.Xuv, n.Xvv)) <= 1e-10);
    }
}

TEST_CASE("geodesic strips: the curve's principal normal is the surface normal") {
    const CurveL3 c = CurveL3::polynomial(RealPoly{0, 0, 0.5}, RealPoly{0, 0, 0, 1.0 / 6.0}, RealPoly{0, 1, 0, 1.0 / 6.0});
    const Strip strip = geodesic_strip(c, {-1, 1});
    const SurfaceSample s = solve(strip, Domain::rect(-1, 1, -0.5, 0.5, 21, 11));
    for (const auto& a : s.axis) {
        const Vec3L acc = c.derivative().derivative()(a.u);
        CHECK(std::min(oracle::norm(a.N - acc), oracle::norm(a.N + acc)) <= 1e-12);
    }
}

TEST_CASE("Taylor-mode strips flag their samples as approximate") {
    const CurveL3 c = CurveL3::polynomial(RealPoly{}, RealPoly{}, RealPoly{0, 1}).as_taylor(0.0, 16);
    const CurveL3 n = CurveL3::polynomial(RealPoly{1}, RealPoly{}, RealPoly{}).as_taylor(0.0, 16);
    const SurfaceSample s = solve(Strip(StripData{c, n, {-1, 1}, SurfaceVariant::timelike_surface}), Domain::rect(-1, 1, -1, 1, 5, 5));
    CHECK(s.approx_flag);
    const SurfaceSample e = solve(line_strip({1, 0, 0}), Domain::rect(-1, 1, -1, 1, 5, 5));
    CHECK_FALSE(e.approx_flag);
}

TEST_CASE("diamond domains") {
    const Strip strip = line_strip({1, 0, 0});
    const SurfaceSample s = solve(strip, Domain::diamond(2.0, 41, 41));
    CHECK(s.shape == DomainShape::diamond);
    std::size_t expect = 0;
    const GridSpec g{-2, 2, -2, 2, 41, 41};
    for (int j = 0; j < 41; ++j)
        for (int i = 0; i < 41; ++i)
            if (std::abs(g.u_at(i)) + std::abs(g.v_at(j)) <= 2.0 + 1e-12) ++expect;
    CHECK(s.size() == expect);
    for (const auto& n : s.nodes) CHECK(std::abs(n.u) + std::abs(n.v) <= 2.0 + 1e-12);
    CHECK(Domain::diamond(1.0, 5, 5).contains(0.5, 0.5));
    CHECK_FALSE(Domain::diamond(1.0, 5, 5).contains(0.75, 0.5));
    CHECK_THROWS_AS(Domain::rect(1, 0, 0, 1, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(Domain::diamond(-1, 3, 3), std::invalid_argument);
}

TEST_CASE("restrict to diamond") {
    const SurfaceSample s = solve(line_strip({1, 0, 0}), Domain::rect(-1, 1, -1, 1, 21, 21));
    const SurfaceSample same = restrict_to_diamond(s, 10.0);
    CHECK(same.size() == s.size());
    CHECK(same.shape == DomainShape::rect);
    const SurfaceSample half = restrict_to_diamond(s, 0.5);
    std::size_t expect = 0;
    for (const auto& n : s.nodes)
        if (std::abs(n.u) + std::abs(n.v) <= 0.5 + 1e-12) ++expect;
    CHECK(half.size() == expect);
    CHECK(half.shape == DomainShape::diamond);
    for (const auto& n : half.nodes) {
        CHECK(half.at(n.i, n.j) != nullptr);
        CHECK(half.at(n.i, n.j)->u == n.u);
    }
    const SurfaceSample even = solve(line_strip({1, 0, 0}), Domain::rect(-1, 1, -1, 1, 20, 20));
    CHECK_THROWS_AS(restrict_to_diamond(even, 0.0), EmptyRestriction);
    CHECK(restrict_to_diamond(s, 0.0).size() == 1);
}

TEST_CASE("lightlike normals everywhere are a degeneracy") {
    // For the parabola strip the metric degenerates where u - v = 5.
    const Strip strip = load_strip(fixture("parabola.toml"));
    CHECK_THROWS_AS(solve(strip, Domain::rect(5, 5, 0, 0, 1, 1)), DegenerateEverywhere);
    CHECK_NOTHROW(solve(strip, Domain::rect(0, 0, 0, 0, 1, 1)));
}
