#include "hforge/surface.hpp"

#include <cmath>
#include <sstream>

#include "hforge/errors.hpp"

namespace hforge {

ProfileChart::ProfileChart(ProfileFn f, ProfileFn g, Vec3 center, double scale, PatchKind kind)
    : f_(std::move(f)), g_(std::move(g)), center_(std::move(center)), scale_(scale), kind_(kind) {}

ChartJet ProfileChart::jet(double t, double phi) const {
    const ProfileJet F = f_(t), G = g_(t);
    const double c = std::cos(phi), s = std::sin(phi);
    ChartJet j;
    j.p = center_ + scale_ * Vec3(F.value * c, F.value * s, G.value);
    j.pu = scale_ * Vec3(F.d1 * c, F.d1 * s, G.d1);
    j.pv = scale_ * Vec3(-F.value * s, F.value * c, 0);
    j.puu = scale_ * Vec3(F.d2 * c, F.d2 * s, G.d2);
    j.puv = scale_ * Vec3(-F.d1 * s, F.d1 * c, 0);
    j.pvv = scale_ * Vec3(-F.value * c, -F.value * s, 0);
    return j;
}

std::shared_ptr<const Chart> ProfileChart::scaled(double lambda) const {
    return std::make_shared<ProfileChart>(f_, g_, lambda * center_, lambda * scale_, kind_);
}

std::optional<double> ProfileChart::closed_form_H(double t, double) const {
    const ProfileJet F = f_(t), G = g_(t);
    const double E = F.d1 * F.d1 + G.d1 * G.d1;
    if (F.value <= 0 || E <= 0) return {};
    if (kind_ == PatchKind::graph || kind_ == PatchKind::plane_annulus) {
        // graph over the plane, z = z(rho): evaluate the Cartesian graph
        // formula ((1+fy^2)fxx - 2 fx fy fxy + (1+fx^2)fyy) / (1+|grad|^2)^{3/2}
        // from the radial profile; f(t) = t for these charts.
        const double zp = G.d1, zpp = G.d2, rho = F.value;
        const double ca = 1.0, sa = 0.0;  // radial symmetry: any angle works
        const double fx = zp * ca, fy = zp * sa;
        const double fxx = zpp * ca * ca + (zp / rho) * sa * sa;
        const double fyy = zpp * sa * sa + (zp / rho) * ca * ca;
        const double fxy = (zpp - zp / rho) * sa * ca;
        const double w2 = 1 + fx * fx + fy * fy;
        return ((1 + fy * fy) * fxx - 2 * fx * fy * fxy + (1 + fx * fx) * fyy) /
               (scale_ * std::pow(w2, 1.5));
    }
    // surface of revolution: H = [f (f' g'' - f'' g') + g' E] / (f E^{3/2})
    return (F.value * (F.d1 * G.d2 - F.d2 * G.d1) + G.d1 * E) /
           (scale_ * F.value * std::pow(E, 1.5));
}

std::optional<double> ProfileChart::closed_form_K(double t, double) const {
    const ProfileJet F = f_(t), G = g_(t);
    const double E = F.d1 * F.d1 + G.d1 * G.d1;
    if (F.value <= 0 || E <= 0) return {};
    // K = (-(g')^2 f'' + f' g' g'') / (f E^2)
    return (-G.d1 * G.d1 * F.d2 + F.d1 * G.d1 * G.d2) /
           (scale_ * scale_ * F.value * E * E);
}

std::shared_ptr<const Chart> LambdaChart::scaled(double lambda) const {
    JetFn base = fn_;
    return std::make_shared<LambdaChart>(
        [base, lambda](double u, double v) {
            ChartJet j = base(u, v);
            j.p *= lambda;
            j.pu *= lambda;
            j.pv *= lambda;
            j.puu *= lambda;
            j.puv *= lambda;
            j.pvv *= lambda;
            return j;
        },
        kind_);
}

bool ParamPatch::active(double u, double v) const {
    if (u < domain.u0 || u > domain.u1 || v < domain.v0 || v > domain.v1) return false;
    if (!holes.empty()) {
        const Vec2 q(u * std::cos(v), u * std::sin(v));
        for (const Disc2& d : holes)
            if ((q - d.center).squaredNorm() < d.radius * d.radius) return false;
    }
    return true;
}

ParamPatch ParamPatch::scaled(double lambda) const {
    ParamPatch out = *this;
    out.chart = chart->scaled(lambda);
    return out;  // parameter-plane holes and domain are unchanged
}

namespace {

FundamentalForms forms_from_jet(const ParamPatch& patch, double u, double v, const ChartJet& j) {
    FundamentalForms ff;
    ff.E = j.pu.dot(j.pu);
    ff.F = j.pu.dot(j.pv);
    ff.G = j.pv.dot(j.pv);
    const double det = ff.E * ff.G - ff.F * ff.F;
    if (!(det > 0)) {
        std::ostringstream os;
        os << "degenerate chart point at (" << u << ", " << v << "): EG - F^2 = " << det;
        throw DegeneratePoint(os.str());
    }
    const Vec3 n = patch.orientation * j.pu.cross(j.pv).normalized();
    ff.L = j.puu.dot(n);
    ff.M = j.puv.dot(n);
    ff.N = j.pvv.dot(n);
    return ff;
}

}  // namespace

FundamentalForms fundamental_forms(const ParamPatch& patch, double u, double v) {
    return forms_from_jet(patch, u, v, patch.jet(u, v));
}

CurvaturePoint curvature_from_jet(const ParamPatch& patch, double u, double v, const ChartJet& jet) {
    const FundamentalForms ff = forms_from_jet(patch, u, v, jet);
    const double det = ff.E * ff.G - ff.F * ff.F;
    CurvaturePoint cp;
    cp.H = (ff.G * ff.L - 2 * ff.F * ff.M + ff.E * ff.N) / det;
    cp.K = (ff.L * ff.N - ff.M * ff.M) / det;
    cp.dA = std::sqrt(det);

    if (patch.kind == PatchKind::graph || patch.kind == PatchKind::revolution) {
        // 1e-8 relative, where "relative" is against the magnitude of the
        // terms being cancelled (the principal-curvature scale of the patch)
        const double h_scale = (ff.G * std::fabs(ff.L) + 2 * std::fabs(ff.F * ff.M) +
                                ff.E * std::fabs(ff.N)) / det;
        const double k_scale = (std::fabs(ff.L * ff.N) + ff.M * ff.M) / det;
        if (auto cf = patch.chart->closed_form_H(u, v)) {
            const double want = patch.orientation * *cf;
            if (std::fabs(cp.H - want) > 1e-8 * std::max({1.0, std::fabs(want), h_scale})) {
                std::ostringstream os;
                os << "closed-form mean curvature disagrees with forms pipeline at (" << u
                   << ", " << v << "): " << cp.H << " vs " << want << " on patch "
                   << patch.label;
                throw ContradictionDetected(os.str());
            }
        }
        if (patch.kind == PatchKind::revolution) {
            if (auto cf = patch.chart->closed_form_K(u, v)) {
                if (std::fabs(cp.K - *cf) > 1e-8 * std::max({1.0, std::fabs(*cf), k_scale})) {
                    std::ostringstream os;
                    os << "closed-form Gauss curvature disagrees with forms pipeline at (" << u
                       << ", " << v << "): " << cp.K << " vs " << *cf << " on patch "
                       << patch.label;
                    throw ContradictionDetected(os.str());
                }
            }
        }
    }
    return cp;
}

CurvaturePoint curvature_at(const ParamPatch& patch, double u, double v) {
    return curvature_from_jet(patch, u, v, patch.jet(u, v));
}

DerivativeReport verify_derivatives(const ParamPatch& patch, int samples) {
    DerivativeReport rep;
    const Rect& d = patch.domain;
    const double du = d.u1 - d.u0, dv = d.v1 - d.v0;
    const double diam = std::hypot(du, dv);
    const double h = 1e-5 * diam;
    const double shrink = std::max(1e-8 * diam, 2 * h);

    auto rel = [](const Vec3& got, const Vec3& want) {
        double scale = std::max(want.norm(), 1e-9);
        return (got - want).norm() / scale;
    };

    // golden-ratio lattice over the shrunken rectangle, skipping masked points
    const double phi1 = 0.7548776662466927, phi2 = 0.5698402909980532;
    double x = 0.5, y = 0.5;
    for (int i = 0; i < samples; ++i) {
        x = std::fmod(x + phi1, 1.0);
        y = std::fmod(y + phi2, 1.0);
        const double u = d.u0 + shrink + x * (du - 2 * shrink);
        const double v = d.v0 + shrink + y * (dv - 2 * shrink);
        if (!patch.active(u, v)) continue;

        const ChartJet c = patch.jet(u, v);
        const ChartJet up = patch.jet(u + h, v), um = patch.jet(u - h, v);
        const ChartJet vp = patch.jet(u, v + h), vm = patch.jet(u, v - h);

        rep.max_rel_first = std::max(rep.max_rel_first, rel((up.p - um.p) / (2 * h), c.pu));
        rep.max_rel_first = std::max(rep.max_rel_first, rel((vp.p - vm.p) / (2 * h), c.pv));
        rep.max_rel_second = std::max(rep.max_rel_second, rel((up.pu - um.pu) / (2 * h), c.puu));
        rep.max_rel_second = std::max(rep.max_rel_second, rel((vp.pu - vm.pu) / (2 * h), c.puv));
        rep.max_rel_second = std::max(rep.max_rel_second, rel((up.pv - um.pv) / (2 * h), c.puv));
        rep.max_rel_second = std::max(rep.max_rel_second, rel((vp.pv - vm.pv) / (2 * h), c.pvv));
        ++rep.samples;
    }
    rep.pass = rep.max_rel_first < 1e-6 && rep.max_rel_second < 1e-6;
    return rep;
}

void SurfaceAssembly::check_invariants() const {
    for (const ParamPatch& patch : patches) {
        const Rect& d = patch.domain;
        const double du = d.u1 - d.u0, dv = d.v1 - d.v0;
        const double shrink = 1e-8 * std::hypot(du, dv);
        for (int i = 0; i < 5; ++i) {
            for (int k = 0; k < 5; ++k) {
                const double u = d.u0 + shrink + (du - 2 * shrink) * (i + 0.5) / 5.0;
                const double v = d.v0 + shrink + (dv - 2 * shrink) * (k + 0.5) / 5.0;
                if (!patch.active(u, v)) continue;
                const ChartJet j = patch.jet(u, v);
                if (!(j.pu.cross(j.pv).norm() > 0))
                    throw DegeneratePoint("patch not immersed at sample point");
                if (meta.in_unit_ball && j.p.norm() > 1 + 1e-9)
                    throw NotInBall("assembly flagged inside unit ball has |p| > 1 + 1e-9");
            }
        }
    }
}

SurfaceAssembly scaled(const SurfaceAssembly& assembly, double lambda) {
    SurfaceAssembly out = assembly;
    for (ParamPatch& p : out.patches) p = p.scaled(lambda);
    out.meta.containing_radius *= lambda;
    out.meta.innermost_scale *= lambda;
    out.meta.in_unit_ball = out.meta.containing_radius <= 1 + 1e-9;
    return out;
}

}  // namespace hforge
