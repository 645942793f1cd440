#pragma once
#include "hforge/surface.hpp"

namespace hforge {
namespace fixtures {

// round sphere as a single revolution patch (polar angle from the north pole)
SurfaceAssembly sphere(double radius = 1.0, int multiplicity = 1, Vec3 center = Vec3::Zero());

// flat horizontal disc of given radius at height z (not closed)
SurfaceAssembly flat_disc(double radius, double z = 0.0);

// two unit spheres far apart; closed but disconnected
SurfaceAssembly two_disjoint_spheres(double gap = 3.0);

// catenoid band |t| <= T as a generic (non-profile) chart, for exercising the
// 2D quadrature path on an exactly minimal surface
SurfaceAssembly catenoid_band_generic(double T);

// plane patch (u, v, 0) over [-1,1]^2 as a generic chart
ParamPatch plane_patch();

// unit-sphere chart (polar, azimuth) as a generic chart for form tests
ParamPatch sphere_patch_generic(double radius = 1.0);

// standard catenoid chart (cosh t cos phi, cosh t sin phi, t), revolution kind
ParamPatch catenoid_patch(double T);

}  // namespace fixtures
}  // namespace hforge
