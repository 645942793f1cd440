#pragma once
#include <iosfwd>
#include <vector>

#include "hforge/energy.hpp"
#include "hforge/quadrature.hpp"
#include "hforge/surface.hpp"

namespace hforge {

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    double weld_tolerance = 0;
};

// Welded triangle mesh of the assembly; `resolution` is the segment count
// around a full turn of revolution.  Shared boundary circles between patches
// reuse identical vertices, so closed assemblies weld watertight by
// construction; throws NotWatertight when a closed assembly does not.
TriMesh triangulate(const SurfaceAssembly& assembly, int resolution = 96);

bool is_watertight(const TriMesh& mesh);
bool is_connected(const TriMesh& mesh);

// genus from V - E + F = 2 - 2g; requires a watertight mesh
int euler_genus(const TriMesh& mesh);

// Wavefront OBJ: "v x y z" / "f i j k", 1-based, LF endings
void save_obj(const TriMesh& mesh, std::ostream& os);

struct BallCheck {
    double willmore = 0, area = 0, margin = 0;
    double err = 0;
    bool pass = false;
};

// W >= area for surfaces in the closed unit ball, equality only for
// multiplicity-k round unit spheres
BallCheck mueller_roeger_check(const SurfaceAssembly& assembly, double tol);

struct LiYauRow {
    double r = 0, mass = 0, curvature_term = 0;
    bool ok = false;
};
struct LiYauReport {
    double theta_sq = 0;   // density estimate at the center
    double probe_radius = 0;
    std::vector<LiYauRow> rows;
    bool pass = false;
};

// density bound theta^2(x) <= mu(B_r)/(pi r^2) + (1/4pi) int_{B_r} |H|^2
LiYauReport li_yau_density_check(const SurfaceAssembly& assembly, const Vec3& center,
                                 const std::vector<double>& radii, double tol);

struct SphereCriterion {
    double energy = 0, threshold = 0;
    bool is_sphere_certified = false;
};

// E <= 4 chi_H * area certifies a topological sphere (chi_K < 0, H0 = 0)
SphereCriterion sphere_criterion_check(const SurfaceAssembly& assembly,
                                       const HelfrichParams& params, double tol = 1e-6);

struct MassProfile {
    std::vector<double> radii;
    std::vector<double> masses;
};

MassProfile mass_profile(const SurfaceAssembly& assembly, const Vec3& center,
                         const std::vector<double>& radii, double tol = 1e-4);

// the fixed family of test radii used by the convergence metric
const std::vector<double>& reference_profile_radii();

// sup over the reference radii of |mu(B_r(0)) - m * sigma(B_r(0))| where
// sigma is the unit-sphere area measure
double convergence_distance(const SurfaceAssembly& assembly, int m, double tol = 1e-4);

}  // namespace hforge
