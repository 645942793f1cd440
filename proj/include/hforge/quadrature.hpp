#pragma once
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hforge/surface.hpp"

namespace hforge {

struct QuadOptions {
    double tol = 1e-6;         // absolute tolerance per integrand component
    int max_depth = 12;        // bisection depth below the initial grid
    long max_evals = 40000000; // chart evaluations across one patch
    int init_u = 8, init_v = 8;
};

// restrict integration to the part of the surface with |p - center| <= radius
struct BallWindow {
    Vec3 center = Vec3::Zero();
    double radius = 0;
};

static constexpr int kMaxComponents = 6;

struct QuadPoint {
    Vec3 p;
    double H = 0, K = 0;
};

// eval fills `ncomp` values at a surface point; the engine multiplies by the
// area element and quadrature weights
struct IntegrandSpec {
    int ncomp = 1;
    bool needs_curvature = false;
    std::function<void(const QuadPoint&, double*)> eval;
};

struct QuadResult {
    std::array<double, kMaxComponents> values{};
    std::array<double, kMaxComponents> errors{};
    long evals = 0;
    int ncomp = 0;

    void accumulate(const QuadResult& other, double weight = 1.0);
};

// Adaptive Gauss-Legendre (7 nodes per axis, recursive bisection).  Patches of
// revolution with an axisymmetric mask reduce to 1D in the profile parameter
// with the angular factor applied exactly; everything else integrates as a 2D
// tensor rule.  Removed discs are resolved by exact annular-sector/disc tests;
// sub-tolerance discs are subtracted analytically at their center value.
QuadResult integrate_patch(const ParamPatch& patch, const IntegrandSpec& spec,
                           const QuadOptions& opt,
                           const std::optional<BallWindow>& window = {});

// Sum over patches (deterministic order, concurrent evaluation) times the
// assembly multiplicity.
QuadResult integrate_assembly(const SurfaceAssembly& assembly, const IntegrandSpec& spec,
                              const QuadOptions& opt,
                              const std::optional<BallWindow>& window = {});

}  // namespace hforge
