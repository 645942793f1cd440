#pragma once
#include <string>
#include <vector>

#include "hforge/quadrature.hpp"
#include "hforge/surface.hpp"

namespace hforge {

// Full parameter record for the glued multi-sheet construction.
struct GenusSurfaceSpec {
    int m = 2;               // sheet count >= 2
    int g = 0;               // genus >= 0
    double delta = 0.05;     // flattening scale
    double R = 4.0;          // neck half-length
    double eta = 0.0;        // neck rescale factor
    double rho = 0.0;        // neck-disc radius
    std::vector<Vec2> centers;  // neck centers in D_{delta/2}
    double t = 0.0;          // bump amplitude
    double alpha = 1.0;      // bump width factor

    int neck_count() const { return m + g - 1; }
};

struct BumpSpec {
    double t = 0.0;
    double alpha = 1.0;
};

// height of the flattened plateau, sqrt(1 - (3 delta)^2)
double flat_height(double delta);

// inner-sheet scale: necks of scale eta span exactly between adjacent sheets
double sheet_ratio(double delta, double R, double eta);

// eta from the automatic parametrization eta = theta * min(rho/cosh(R+1), delta^3/R)
double eta_from_theta(double delta, double R, double rho, double theta);

// neck centers on a regular (m+g-1)-gon of radius delta/4, rho = delta/(4 n + 4)
GenusSurfaceSpec default_spec(int m, int g, double delta = 0.05, double R = 4.0,
                              double theta_eta = 0.5, double t = 0.0, double alpha = 1.0);

// every violated gluing constraint, by name; empty means feasible
std::vector<std::string> validate(const GenusSurfaceSpec& spec);

// convex flattened unit sphere: exact sphere outside the cylinder over
// D_{4 delta}, graph z = sqrt(1 - r_delta(|x|)^2) over it, flat on D_{2 delta}
SurfaceAssembly flattened_sphere(double delta);

// catenoid with ends eased to the planes z = +-(R + 1/2), continued by flat
// annuli out to outer_radius_factor * cosh(R+1)
SurfaceAssembly flattened_catenoid(double R, double outer_radius_factor = 2.0);

// m concentric flattened spheres at scales 1, r, r^2, ... joined by m+g-1
// rescaled necks; bump applied to the innermost sheet when spec.t > 0
SurfaceAssembly genus_surface(const GenusSurfaceSpec& spec);

// replace the innermost sheet's south polar cap by the bumped graph
SurfaceAssembly south_pole_bump(const SurfaceAssembly& assembly, const BumpSpec& bump);

// uniform rescale so that measured area equals target
SurfaceAssembly rescale_to_area(const SurfaceAssembly& assembly, double target_area,
                                const QuadOptions& opt = {});

// area gained by the bump alone (difference of the two replaced patches)
double bump_area_delta(const GenusSurfaceSpec& spec, double t, const QuadOptions& opt = {});
double bump_willmore_delta(const GenusSurfaceSpec& spec, double t, const QuadOptions& opt = {});

// smallest bump amplitude that lifts the assembly area to >= target
double solve_bump_amplitude(const GenusSurfaceSpec& spec, double target_area,
                            const QuadOptions& opt = {});

// JSON round trip for the documented schema (spec_version 1); from_json
// rejects unknown keys
std::string spec_to_json(const GenusSurfaceSpec& spec);
GenusSurfaceSpec spec_from_json(const std::string& text);

}  // namespace hforge
