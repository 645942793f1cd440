#pragma once
#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hforge/profiles.hpp"

namespace hforge {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// position and first/second partial derivatives of a chart at one point
struct ChartJet {
    Vec3 p, pu, pv, puu, puv, pvv;
};

enum class PatchKind { graph, revolution, sphere_cap, plane_annulus, generic };

// An analytic chart (u,v) -> R^3.  Closed-form curvatures, when available,
// are reported with respect to the chart's own normal direction pu x pv.
class Chart {
public:
    virtual ~Chart() = default;
    virtual ChartJet jet(double u, double v) const = 0;
    virtual std::shared_ptr<const Chart> scaled(double lambda) const = 0;
    virtual std::optional<double> closed_form_H(double u, double v) const { return {}; }
    virtual std::optional<double> closed_form_K(double u, double v) const { return {}; }
    // true when the chart is a surface of revolution in (u = profile, v = angle)
    virtual bool axisymmetric() const { return false; }
};

// Surface of revolution about the vertical axis through `center`:
//   p(t, phi) = center + scale * (f(t) cos phi, f(t) sin phi, g(t))
// Covers every chart this project constructs: sphere caps (f=sin, g=cos),
// radial graphs (f=t, g=height profile), catenoid necks and flat annuli.
class ProfileChart : public Chart {
public:
    using ProfileFn = std::function<ProfileJet(double)>;

    ProfileChart(ProfileFn f, ProfileFn g, Vec3 center, double scale, PatchKind kind);

    ChartJet jet(double t, double phi) const override;
    std::shared_ptr<const Chart> scaled(double lambda) const override;
    std::optional<double> closed_form_H(double t, double phi) const override;
    std::optional<double> closed_form_K(double t, double phi) const override;
    bool axisymmetric() const override { return true; }

    const Vec3& center() const { return center_; }
    double scale() const { return scale_; }
    PatchKind kind() const { return kind_; }
    ProfileJet f(double t) const { return f_(t); }
    ProfileJet g(double t) const { return g_(t); }

private:
    ProfileFn f_, g_;
    Vec3 center_;
    double scale_;
    PatchKind kind_;
};

// Fully generic chart driven by a user-supplied jet; used by tests/fixtures.
class LambdaChart : public Chart {
public:
    using JetFn = std::function<ChartJet(double, double)>;
    LambdaChart(JetFn fn, PatchKind kind = PatchKind::generic) : fn_(std::move(fn)), kind_(kind) {}
    ChartJet jet(double u, double v) const override { return fn_(u, v); }
    std::shared_ptr<const Chart> scaled(double lambda) const override;

private:
    JetFn fn_;
    PatchKind kind_;
};

// removed disc in the chart's profile plane coordinates (t cos phi, t sin phi)
struct Disc2 {
    Vec2 center;
    double radius = 0;
};

struct Rect {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
};

// One patch of a surface: a chart restricted to a parameter rectangle with an
// active-subdomain mask (rectangle minus removed discs) and a normal sign.
struct ParamPatch {
    std::shared_ptr<const Chart> chart;
    Rect domain;
    PatchKind kind = PatchKind::generic;
    int orientation = +1;            // +1 keeps the chart normal, -1 flips it
    std::vector<Disc2> holes;        // active subdomain excludes these discs
    bool v_periodic = false;         // v spans a full turn of revolution

    // mesh bookkeeping: ids of shared boundary circles (-1 when free/pole)
    int ring_key_u0 = -1, ring_key_u1 = -1;
    std::vector<int> hole_ring_keys;
    std::string label;

    ParamPatch() = default;
    ParamPatch(std::shared_ptr<const Chart> c, Rect d, PatchKind k, int orient = +1)
        : chart(std::move(c)), domain(d), kind(k), orientation(orient) {}

    ChartJet jet(double u, double v) const { return chart->jet(u, v); }
    bool active(double u, double v) const;
    const ProfileChart* profile() const {
        return dynamic_cast<const ProfileChart*>(chart.get());
    }
    ParamPatch scaled(double lambda) const;
};

struct FundamentalForms {
    double E = 0, F = 0, G = 0;  // first form
    double L = 0, M = 0, N = 0;  // second form (orientation applied)
};

struct CurvaturePoint {
    double H = 0;   // scalar mean curvature, sum of principal curvatures
    double K = 0;   // Gauss curvature
    double dA = 0;  // area element sqrt(EG - F^2)
};

FundamentalForms fundamental_forms(const ParamPatch& patch, double u, double v);

// H = (G L - 2 F M + E N) / (EG - F^2), K = (L N - M^2) / (EG - F^2).
// With the conventions here a unit sphere with outward normal has H = -2.
// For graph and revolution patches the closed-form expressions are evaluated
// as well and must agree to 1e-8 relative.
CurvaturePoint curvature_at(const ParamPatch& patch, double u, double v);

// same computation reusing an evaluated jet (quadrature hot path)
CurvaturePoint curvature_from_jet(const ParamPatch& patch, double u, double v, const ChartJet& jet);

struct DerivativeReport {
    double max_rel_first = 0;
    double max_rel_second = 0;
    int samples = 0;
    bool pass = false;
};

// Compares analytic chart derivatives against centered finite differences of
// step 1e-5 * domain diameter at `samples` interior points.
DerivativeReport verify_derivatives(const ParamPatch& patch, int samples);

struct AssemblyMeta {
    int genus = 0;
    int sheets = 1;
    bool closed = true;
    bool in_unit_ball = false;
    double containing_radius = 0;       // max |p| over the surface
    int innermost_cap_patch = -1;       // index of the innermost spherical cap
    double innermost_scale = 1;         // its sphere radius
};

// An immutable ordered collection of patches with an integer multiplicity:
// the integral varifold theta * (union of patches).
struct SurfaceAssembly {
    std::vector<ParamPatch> patches;
    int multiplicity = 1;
    AssemblyMeta meta;

    // sampled immersion / containment invariants; throws on violation
    void check_invariants() const;
    double diameter() const { return 2 * meta.containing_radius; }
};

SurfaceAssembly scaled(const SurfaceAssembly& assembly, double lambda);

}  // namespace hforge
