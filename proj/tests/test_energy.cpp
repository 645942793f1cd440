#include <doctest.h>

#include <cmath>

#include "hforge/energy.hpp"
#include "hforge/errors.hpp"
#include "hforge/fixtures.hpp"
#include "oracle.hpp"

using namespace hforge;
namespace fx = hforge::fixtures;

TEST_CASE("unit sphere calibration: area, Willmore, total Gauss all 4pi") {
    SurfaceAssembly s = fx::sphere();
    EnergyReport rep = evaluate_energy(s, QuadOptions{});
    CHECK(rep.area == doctest::Approx(4 * M_PI).epsilon(1e-9));
    CHECK(rep.willmore == doctest::Approx(4 * M_PI).epsilon(1e-9));
    CHECK(rep.total_gauss == doctest::Approx(4 * M_PI).epsilon(1e-9));
    CHECK(std::fabs(rep.area - 4 * M_PI) < 1e-6);
    CHECK(std::fabs(rep.willmore - 4 * M_PI) < 1e-6);
    CHECK(std::fabs(rep.total_gauss - 4 * M_PI) < 1e-6);
    CHECK(rep.err_area <= 1e-6);
}

TEST_CASE("multiplicity scales every total") {
    SurfaceAssembly s2 = fx::sphere(1.0, 2);
    EnergyReport rep = evaluate_energy(s2, QuadOptions{});
    CHECK(rep.area == doctest::Approx(8 * M_PI));
    CHECK(rep.willmore == doctest::Approx(8 * M_PI));
    CHECK(rep.total_gauss == doctest::Approx(8 * M_PI));
    CHECK(rep.multiplicity_applied == 2);
}

TEST_CASE("catenoid band has zero Willmore energy (2D generic path)") {
    SurfaceAssembly band = fx::catenoid_band_generic(2.0);
    QuadOptions opt;
    opt.tol = 1e-8;
    EnergyReport rep = evaluate_energy(band, opt);
    CHECK(std::fabs(rep.willmore) < 1e-8);
    // total Gauss of the band |t|<=T is -4pi tanh(T) (2*2pi*[tanh]_0^T / 2)
    const double expect = -4 * M_PI * std::tanh(2.0);
    CHECK(rep.total_gauss == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("2D tensor path matches 1D reduction on a sphere") {
    ParamPatch generic = fx::sphere_patch_generic();  // LambdaChart, 2D path
    SurfaceAssembly s;
    s.patches.push_back(generic);
    s.meta.containing_radius = 1;
    EnergyReport rep2d = evaluate_energy(s, QuadOptions{});
    EnergyReport rep1d = evaluate_energy(fx::sphere(), QuadOptions{});
    CHECK(rep2d.area == doctest::Approx(rep1d.area).epsilon(1e-8));
    CHECK(rep2d.willmore == doctest::Approx(rep1d.willmore).epsilon(1e-8));
    CHECK(rep2d.total_gauss == doctest::Approx(rep1d.total_gauss).epsilon(1e-8));
}

TEST_CASE("helfrich energy: theta = m sphere has E = 4 pi m (4 chi_H - |chi_K|)") {
    HelfrichParams hp{0.25, -1.0, 0.0};
    for (int m : {2, 3}) {
        SurfaceAssembly s = fx::sphere(1.0, m);
        double e = helfrich_energy(s, hp, QuadOptions{});
        double expect = 4 * M_PI * m * (4 * hp.chi_H - std::fabs(hp.chi_K));
        CHECK(e == doctest::Approx(expect).epsilon(1e-9));
        CHECK(std::fabs(e - expect) < 1e-6);
    }
    // chi_H = 1/4, chi_K = 0, H0 = 0 reduces to Willmore
    double w = helfrich_energy(fx::sphere(), HelfrichParams{0.25, 0.0, 0.0}, QuadOptions{});
    CHECK(w == doctest::Approx(4 * M_PI));
}

TEST_CASE("nonzero spontaneous curvature uses (H - H0)^2") {
    // sphere radius 1, outward H = -2: integral (H - H0)^2 = (H0 + 2)^2 * 4pi
    HelfrichParams hp{1.0, 0.0, -2.0};
    double e = helfrich_energy(fx::sphere(), hp, QuadOptions{});
    CHECK(e == doctest::Approx(0.0).epsilon(1e-10));
    HelfrichParams hp2{1.0, 0.0, 1.0};
    double e2 = helfrich_energy(fx::sphere(), hp2, QuadOptions{});
    CHECK(e2 == doctest::Approx(9 * 4 * M_PI));
}

TEST_CASE("total_sff = 4 willmore - 2 total_gauss") {
    for (const SurfaceAssembly& a : {fx::sphere(0.8), fx::catenoid_band_generic(1.5)}) {
        EnergyReport rep = evaluate_energy(a, QuadOptions{});
        CHECK(rep.total_sff ==
              doctest::Approx(4 * rep.willmore - 2 * rep.total_gauss).epsilon(1e-9));
        CHECK(rep.total_sff >= -1e-9);
    }
}

TEST_CASE("genus from gauss") {
    CHECK(genus_from_gauss(fx::sphere(), QuadOptions{}) == 0);
    CHECK(genus_from_gauss(fx::sphere(0.3, 3, Vec3(0.1, 0, 0)), QuadOptions{}) == 0);
    // an open band has non-integer gauss mass
    CHECK_THROWS_AS(genus_from_gauss(fx::catenoid_band_generic(1.0), QuadOptions{}),
                    NonIntegerGenus);
}

TEST_CASE("scale invariance of willmore and total gauss") {
    SurfaceAssembly s = fx::sphere(1.0);
    EnergyReport a = evaluate_energy(s, QuadOptions{});
    EnergyReport b = evaluate_energy(scaled(s, 0.5), QuadOptions{});
    CHECK(std::fabs(a.willmore - b.willmore) < 1e-9);
    CHECK(std::fabs(a.total_gauss - b.total_gauss) < 1e-9);
    CHECK(b.area == doctest::Approx(0.25 * a.area));
}

TEST_CASE("refinement consistency: halving tol moves results less than the coarse error") {
    SurfaceAssembly band = fx::catenoid_band_generic(2.5);
    QuadOptions coarse;
    coarse.tol = 1e-4;
    QuadOptions fine;
    fine.tol = 5e-5;
    EnergyReport rc = evaluate_energy(band, coarse);
    EnergyReport rf = evaluate_energy(band, fine);
    CHECK(std::fabs(rc.area - rf.area) <= std::max(rc.err_area, 1e-12) + 1e-9);
    CHECK(std::fabs(rc.total_gauss - rf.total_gauss) <= std::max(rc.err_gauss, 1e-12) + 1e-9);
}

TEST_CASE("engine agrees with the Simpson oracle on a revolution band") {
    // torus-like band: f = 2 + cos t, g = sin t over one full turn (closed torus)
    auto f = [](double t) { return 2 + std::cos(t); };
    auto f1 = [](double t) { return -std::sin(t); };
    auto f2 = [](double t) { return -std::cos(t); };
    auto g1 = [](double t) { return std::cos(t); };
    auto g2 = [](double t) { return -std::sin(t); };
    double w_oracle = oracle::willmore_revolution(f, f1, f2, g1, g2, -M_PI, M_PI, 20000);
    double k_oracle = oracle::gauss_revolution(f, f1, f2, g1, g2, -M_PI, M_PI, 20000);

    auto chart = std::make_shared<ProfileChart>(
        [](double t) -> ProfileJet { return {2 + std::cos(t), -std::sin(t), -std::cos(t)}; },
        [](double t) -> ProfileJet { return {std::sin(t), std::cos(t), -std::sin(t)}; },
        Vec3::Zero(), 1.0, PatchKind::revolution);
    ParamPatch patch(chart, Rect{-M_PI, M_PI, 0, 2 * M_PI}, PatchKind::revolution);
    patch.v_periodic = true;
    SurfaceAssembly torus;
    torus.patches.push_back(patch);
    torus.meta.containing_radius = 3;
    EnergyReport rep = evaluate_energy(torus, QuadOptions{});
    CHECK(rep.willmore == doctest::Approx(w_oracle).epsilon(1e-6));
    CHECK(rep.total_gauss == doctest::Approx(k_oracle).epsilon(1e-6));
    // Gauss-Bonnet for the torus: total K = 0, genus 1
    CHECK(std::fabs(rep.total_gauss) < 1e-6);
    CHECK(genus_from_gauss(torus, QuadOptions{}) == 1);
}
