#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hforge/constructions.hpp"
#include "hforge/diagnostics.hpp"
#include "hforge/errors.hpp"
#include "hforge/fixtures.hpp"

using namespace hforge;
namespace fx = hforge::fixtures;

TEST_CASE("triangulate a flattened sphere: watertight, connected, genus 0") {
    const SurfaceAssembly fs = flattened_sphere(0.05);
    const TriMesh mesh = triangulate(fs, 64);
    CHECK(is_watertight(mesh));
    CHECK(is_connected(mesh));
    CHECK(euler_genus(mesh) == 0);
    // V - E + F = 2 for a sphere
    long V = mesh.vertices.size(), F = mesh.triangles.size();
    CHECK(V - (V + F - 2) + F == 2);  // E = V + F - 2 for chi = 2
}

TEST_CASE("triangulate glued constructions: euler genus matches the spec") {
    struct Case {
        int m, g;
    };
    for (const Case& c : {Case{2, 1}, Case{2, 3}, Case{3, 2}}) {
        const SurfaceAssembly a = genus_surface(default_spec(c.m, c.g, 0.05, 4.0, 0.5));
        const TriMesh mesh = triangulate(a, 48);
        CHECK(is_watertight(mesh));
        CHECK(is_connected(mesh));
        CHECK(euler_genus(mesh) == c.g);
    }
}

TEST_CASE("two disjoint spheres: watertight but not connected") {
    const SurfaceAssembly two = fx::two_disjoint_spheres();
    const TriMesh mesh = triangulate(two, 32);
    CHECK(is_watertight(mesh));
    CHECK(!is_connected(mesh));
}

TEST_CASE("no degenerate triangles and deterministic OBJ output") {
    const SurfaceAssembly a = genus_surface(default_spec(2, 1, 0.05, 4.0, 0.5));
    const TriMesh mesh = triangulate(a, 48);
    double min_area = 1e300;
    for (const auto& t : mesh.triangles) {
        const Vec3 ab = mesh.vertices[t[1]] - mesh.vertices[t[0]];
        const Vec3 ac = mesh.vertices[t[2]] - mesh.vertices[t[0]];
        min_area = std::min(min_area, 0.5 * ab.cross(ac).norm());
    }
    CHECK(min_area > 1e-14);

    std::ostringstream a1, a2;
    save_obj(mesh, a1);
    save_obj(triangulate(a, 48), a2);
    CHECK(a1.str() == a2.str());
    CHECK(a1.str().substr(0, 2) == "v ");
    CHECK(a1.str().find("\r") == std::string::npos);
    const bool has_faces = a1.str().find("\nf ") != std::string::npos;
    CHECK(has_faces);
}

TEST_CASE("mueller-roeger: equality on the unit sphere, checks off the ball rejected") {
    const BallCheck bc = mueller_roeger_check(fx::sphere(), 1e-6);
    CHECK(bc.pass);
    CHECK(std::fabs(bc.margin) < 1e-5);

    CHECK_THROWS_AS(mueller_roeger_check(fx::sphere(1.5), 1e-6), NotInBall);
}

TEST_CASE("mueller-roeger margin under half-scaling") {
    // W stays at ~4pi + excess while the area shrinks to ~pi
    const BallCheck bc = mueller_roeger_check(scaled(flattened_sphere(0.1), 0.5), 1e-6);
    CHECK(bc.pass);
    CHECK(bc.margin == doctest::Approx(3 * M_PI + 0.298).epsilon(0.02));
}

TEST_CASE("li-yau density bound on spheres") {
    const LiYauReport r1 = li_yau_density_check(fx::sphere(), Vec3(0, 0, 1), {0.3, 0.5}, 1e-3);
    CHECK(r1.pass);
    CHECK(r1.theta_sq == doctest::Approx(1.0).epsilon(0.05));

    const LiYauReport r2 =
        li_yau_density_check(fx::sphere(1.0, 2), Vec3(0, 0, 1), {0.3, 0.5}, 1e-3);
    CHECK(r2.pass);
    CHECK(r2.theta_sq == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("sphere criterion") {
    HelfrichParams hp{0.25, -1.0, 0.0};
    const SphereCriterion sc = sphere_criterion_check(fx::sphere(), hp);
    CHECK(sc.is_sphere_certified);
    // E - threshold = 4 pi chi_K for the round sphere
    CHECK(sc.energy - sc.threshold == doctest::Approx(4 * M_PI * hp.chi_K).epsilon(1e-6));

    const SphereCriterion g1 =
        sphere_criterion_check(genus_surface(default_spec(2, 1, 0.05, 4.0, 0.5)), hp);
    CHECK(!g1.is_sphere_certified);

    CHECK_THROWS_AS(sphere_criterion_check(fx::sphere(), HelfrichParams{0.25, 1.0, 0.0}),
                    ContradictionDetected);
}

TEST_CASE("mass profile of the unit sphere") {
    const MassProfile prof =
        mass_profile(fx::sphere(), Vec3::Zero(), {0.5, 0.95, 0.999, 2.0}, 1e-5);
    CHECK(prof.masses[0] == doctest::Approx(0.0));
    CHECK(prof.masses[3] == doctest::Approx(4 * M_PI).epsilon(1e-6));
    for (size_t i = 1; i < prof.masses.size(); ++i)
        CHECK(prof.masses[i] >= prof.masses[i - 1] - 1e-9);
    // band mass below the full area for r slightly under 1... the sphere
    // carries no mass strictly inside radius 1
    CHECK(prof.masses[1] == doctest::Approx(0.0));
}

TEST_CASE("mass profile centered on a surface point is monotone with positive mass") {
    const MassProfile prof =
        mass_profile(fx::sphere(), Vec3(0, 0, 1), {0.2, 0.5, 1.0}, 1e-4);
    CHECK(prof.masses[0] > 0);
    CHECK(prof.masses[0] < prof.masses[1]);
    CHECK(prof.masses[1] < prof.masses[2]);
    // small-cap mass ~ pi r^2 (1 + r^2/4 + ...)
    CHECK(prof.masses[0] == doctest::Approx(M_PI * 0.04 * (1 + 0.01)).epsilon(0.01));
}

TEST_CASE("convergence distance") {
    CHECK(convergence_distance(fx::sphere(1.0, 2), 2, 1e-5) == doctest::Approx(0.0).epsilon(1e-3));
    // flat disc of area 8 pi is far from the doubly covered sphere
    const double far = convergence_distance(fx::flat_disc(std::sqrt(8.0)), 2, 1e-4);
    CHECK(far > 5.0);
}
