#include <doctest.h>

#include <cmath>

#include "hforge/errors.hpp"
#include "hforge/fixtures.hpp"
#include "hforge/surface.hpp"

using namespace hforge;
namespace fx = hforge::fixtures;

TEST_CASE("first fundamental form on reference charts") {
    // unit-sphere chart at the equator: E = 1 (polar), G = 1, F = 0
    ParamPatch sp = fx::sphere_patch_generic();
    FundamentalForms f = fundamental_forms(sp, M_PI / 2, 0.3);
    CHECK(f.E == doctest::Approx(1.0));
    CHECK(f.G == doctest::Approx(1.0));
    CHECK(f.F == doctest::Approx(0.0));

    // plane: vanishing second form everywhere
    ParamPatch pl = fx::plane_patch();
    FundamentalForms fp = fundamental_forms(pl, 0.37, -0.81);
    CHECK(fp.L == doctest::Approx(0.0));
    CHECK(fp.M == doctest::Approx(0.0));
    CHECK(fp.N == doctest::Approx(0.0));

    // catenoid at the neck: E = cosh^2(0) = 1, G = 1, F = 0
    ParamPatch cat = fx::catenoid_patch(3.0);
    FundamentalForms fc = fundamental_forms(cat, 0.0, 1.1);
    CHECK(fc.E == doctest::Approx(1.0));
    CHECK(fc.G == doctest::Approx(1.0));
    CHECK(fc.F == doctest::Approx(0.0));
}

TEST_CASE("curvature on the unit sphere, both orientations") {
    ParamPatch sp = fx::sphere_patch_generic();
    CurvaturePoint c = curvature_at(sp, 1.0, 2.0);
    CHECK(c.H == doctest::Approx(-2.0));  // outward normal
    CHECK(c.K == doctest::Approx(1.0));

    sp.orientation = -1;
    CurvaturePoint ci = curvature_at(sp, 1.0, 2.0);
    CHECK(ci.H == doctest::Approx(2.0));
    CHECK(ci.K == doctest::Approx(1.0));
    CHECK(ci.dA == doctest::Approx(c.dA));
}

TEST_CASE("catenoid is minimal; closed forms agree with the forms pipeline") {
    ParamPatch cat = fx::catenoid_patch(4.0);
    for (double t : {-3.5, -1.0, 0.0, 0.4, 2.7}) {
        CurvaturePoint c = curvature_at(cat, t, 0.9);
        CHECK(c.H == doctest::Approx(0.0).epsilon(1e-10));
        // K = -1/cosh^4 t for the standard catenoid
        CHECK(c.K == doctest::Approx(-1.0 / std::pow(std::cosh(t), 4)));
    }
}

TEST_CASE("orientation flip negates H and preserves K, dA on every chart kind") {
    std::vector<ParamPatch> patches = {fx::sphere_patch_generic(), fx::plane_patch(),
                                       fx::catenoid_patch(2.0)};
    for (ParamPatch& p : patches) {
        ParamPatch flipped = p;
        flipped.orientation = -p.orientation;
        const Rect& d = p.domain;
        for (int i = 1; i <= 3; ++i) {
            double u = d.u0 + (d.u1 - d.u0) * i / 4.0;
            double v = d.v0 + (d.v1 - d.v0) * i / 4.0;
            CurvaturePoint a = curvature_at(p, u, v);
            CurvaturePoint b = curvature_at(flipped, u, v);
            CHECK(b.H == doctest::Approx(-a.H));
            CHECK(b.K == doctest::Approx(a.K));
            CHECK(b.dA == doctest::Approx(a.dA));
        }
    }
}

TEST_CASE("uniform rescale: H ~ 1/lambda, K ~ 1/lambda^2, dA ~ lambda^2") {
    SurfaceAssembly s = fx::sphere(1.0);
    for (double lambda : {0.5, 2.0}) {
        SurfaceAssembly t = scaled(s, lambda);
        CurvaturePoint a = curvature_at(s.patches[0], 1.2, 0.7);
        CurvaturePoint b = curvature_at(t.patches[0], 1.2, 0.7);
        CHECK(b.H == doctest::Approx(a.H / lambda));
        CHECK(b.K == doctest::Approx(a.K / (lambda * lambda)));
        CHECK(b.dA == doctest::Approx(a.dA * lambda * lambda));
    }
}

TEST_CASE("H^2 >= 4K pointwise") {
    std::vector<ParamPatch> patches = {fx::sphere_patch_generic(), fx::catenoid_patch(2.5),
                                       fx::plane_patch()};
    for (const ParamPatch& p : patches) {
        const Rect& d = p.domain;
        for (int i = 1; i < 8; ++i)
            for (int k = 1; k < 8; ++k) {
                double u = d.u0 + (d.u1 - d.u0) * i / 8.0;
                double v = d.v0 + (d.v1 - d.v0) * k / 8.0;
                CurvaturePoint c = curvature_at(p, u, v);
                CHECK(c.H * c.H >= 4 * c.K - 1e-10);
            }
    }
}

TEST_CASE("verify_derivatives") {
    DerivativeReport plane = verify_derivatives(fx::plane_patch(), 50);
    CHECK(plane.pass);
    CHECK(plane.max_rel_first == doctest::Approx(0.0).epsilon(1e-12));

    DerivativeReport sph = verify_derivatives(fx::sphere_patch_generic(), 100);
    CHECK(sph.pass);
    CHECK(sph.max_rel_first < 1e-6);
    CHECK(sph.max_rel_second < 1e-6);

    DerivativeReport cat = verify_derivatives(fx::catenoid_patch(3.0), 100);
    CHECK(cat.pass);
}

TEST_CASE("degenerate point raises") {
    // chart collapsing in v: (u, 0, 0)
    auto chart = std::make_shared<LambdaChart>([](double u, double) {
        ChartJet j;
        j.p = Vec3(u, 0, 0);
        j.pu = Vec3(1, 0, 0);
        j.pv = Vec3::Zero();
        j.puu = j.puv = j.pvv = Vec3::Zero();
        return j;
    });
    ParamPatch p(chart, Rect{0, 1, 0, 1}, PatchKind::generic);
    CHECK_THROWS_AS(fundamental_forms(p, 0.5, 0.5), DegeneratePoint);
}

TEST_CASE("assembly invariants: immersion and ball containment") {
    SurfaceAssembly s = fx::sphere(1.0);
    s.meta.in_unit_ball = true;
    CHECK_NOTHROW(s.check_invariants());

    SurfaceAssembly big = fx::sphere(1.5);
    big.meta.in_unit_ball = true;  // wrong on purpose
    CHECK_THROWS_AS(big.check_invariants(), NotInBall);
}
