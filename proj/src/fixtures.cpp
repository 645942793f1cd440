#include "hforge/fixtures.hpp"

#include <cmath>

namespace hforge {
namespace fixtures {

namespace {

ProfileChart::ProfileFn sin_profile() {
    return [](double t) -> ProfileJet { return {std::sin(t), std::cos(t), -std::sin(t)}; };
}
ProfileChart::ProfileFn cos_profile() {
    return [](double t) -> ProfileJet { return {std::cos(t), -std::sin(t), -std::cos(t)}; };
}

}  // namespace

SurfaceAssembly sphere(double radius, int multiplicity, Vec3 center) {
    auto chart = std::make_shared<ProfileChart>(sin_profile(), cos_profile(), center, radius,
                                                PatchKind::sphere_cap);
    ParamPatch patch(chart, Rect{0, M_PI, 0, 2 * M_PI}, PatchKind::sphere_cap);
    patch.v_periodic = true;
    patch.label = "sphere";
    SurfaceAssembly a;
    a.patches.push_back(std::move(patch));
    a.multiplicity = multiplicity;
    a.meta.genus = 0;
    a.meta.sheets = multiplicity;
    a.meta.closed = true;
    a.meta.containing_radius = center.norm() + radius;
    a.meta.in_unit_ball = a.meta.containing_radius <= 1 + 1e-9;
    a.meta.innermost_cap_patch = 0;
    a.meta.innermost_scale = radius;
    return a;
}

SurfaceAssembly flat_disc(double radius, double z) {
    auto chart = std::make_shared<ProfileChart>(
        [](double t) -> ProfileJet { return {t, 1, 0}; },
        [](double) -> ProfileJet { return {0, 0, 0}; }, Vec3(0, 0, z), 1.0,
        PatchKind::plane_annulus);
    ParamPatch patch(chart, Rect{0, radius, 0, 2 * M_PI}, PatchKind::plane_annulus);
    patch.v_periodic = true;
    patch.label = "flat-disc";
    SurfaceAssembly a;
    a.patches.push_back(std::move(patch));
    a.meta.closed = false;
    a.meta.containing_radius = std::hypot(radius, z);
    a.meta.in_unit_ball = a.meta.containing_radius <= 1 + 1e-9;
    return a;
}

SurfaceAssembly two_disjoint_spheres(double gap) {
    SurfaceAssembly a = sphere(1.0, 1, Vec3(-gap / 2 - 1, 0, 0));
    SurfaceAssembly b = sphere(1.0, 1, Vec3(gap / 2 + 1, 0, 0));
    a.patches.push_back(b.patches[0]);
    a.meta.containing_radius = gap / 2 + 2;
    a.meta.in_unit_ball = false;
    return a;
}

SurfaceAssembly catenoid_band_generic(double T) {
    auto chart = std::make_shared<LambdaChart>([](double t, double phi) {
        const double ch = std::cosh(t), sh = std::sinh(t);
        const double c = std::cos(phi), s = std::sin(phi);
        ChartJet j;
        j.p = Vec3(ch * c, ch * s, t);
        j.pu = Vec3(sh * c, sh * s, 1);
        j.pv = Vec3(-ch * s, ch * c, 0);
        j.puu = Vec3(ch * c, ch * s, 0);
        j.puv = Vec3(-sh * s, sh * c, 0);
        j.pvv = Vec3(-ch * c, -ch * s, 0);
        return j;
    });
    ParamPatch patch(chart, Rect{-T, T, 0, 2 * M_PI}, PatchKind::generic);
    patch.v_periodic = true;
    patch.label = "catenoid-band";
    SurfaceAssembly a;
    a.patches.push_back(std::move(patch));
    a.meta.closed = false;
    a.meta.containing_radius = std::hypot(std::cosh(T), T);
    a.meta.in_unit_ball = false;
    return a;
}

ParamPatch plane_patch() {
    auto chart = std::make_shared<LambdaChart>([](double u, double v) {
        ChartJet j;
        j.p = Vec3(u, v, 0);
        j.pu = Vec3(1, 0, 0);
        j.pv = Vec3(0, 1, 0);
        j.puu = j.puv = j.pvv = Vec3::Zero();
        return j;
    });
    ParamPatch p(chart, Rect{-1, 1, -1, 1}, PatchKind::generic);
    p.label = "plane";
    return p;
}

ParamPatch sphere_patch_generic(double radius) {
    auto chart = std::make_shared<LambdaChart>([radius](double th, double ph) {
        const double st = std::sin(th), ct = std::cos(th);
        const double cp = std::cos(ph), sp = std::sin(ph);
        ChartJet j;
        j.p = radius * Vec3(st * cp, st * sp, ct);
        j.pu = radius * Vec3(ct * cp, ct * sp, -st);
        j.pv = radius * Vec3(-st * sp, st * cp, 0);
        j.puu = -j.p;
        j.puv = radius * Vec3(-ct * sp, ct * cp, 0);
        j.pvv = radius * Vec3(-st * cp, -st * sp, 0);
        return j;
    });
    ParamPatch p(chart, Rect{0, M_PI, 0, 2 * M_PI}, PatchKind::generic);
    p.v_periodic = true;
    p.label = "sphere-generic";
    return p;
}

ParamPatch catenoid_patch(double T) {
    auto chart = std::make_shared<ProfileChart>(
        [](double t) -> ProfileJet { return {std::cosh(t), std::sinh(t), std::cosh(t)}; },
        [](double t) -> ProfileJet { return {t, 1, 0}; }, Vec3::Zero(), 1.0,
        PatchKind::revolution);
    ParamPatch p(chart, Rect{-T, T, 0, 2 * M_PI}, PatchKind::revolution);
    p.v_periodic = true;
    p.label = "catenoid";
    return p;
}

}  // namespace fixtures
}  // namespace hforge
