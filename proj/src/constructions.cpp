#include "hforge/constructions.hpp"

#include <cmath>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "hforge/errors.hpp"
#include "hforge/profiles.hpp"

namespace hforge {

namespace {

constexpr double kBumpCapRadius = 0.65;  // sin of the polar cap angle reserved for the bump

ProfileChart::ProfileFn sphere_f() {
    return [](double t) -> ProfileJet { return {std::sin(t), std::cos(t), -std::sin(t)}; };
}
ProfileChart::ProfileFn sphere_g() {
    return [](double t) -> ProfileJet { return {std::cos(t), -std::sin(t), -std::cos(t)}; };
}
ProfileChart::ProfileFn radial_f() {
    return [](double t) -> ProfileJet { return {t, 1, 0}; };
}
ProfileChart::ProfileFn const_g(double value) {
    return [value](double) -> ProfileJet { return {value, 0, 0}; };
}

// z(rho) = sqrt(1 - r(rho)^2) for the transition annulus
ProfileChart::ProfileFn transition_g(std::shared_ptr<const TransitionProfile> tp) {
    return [tp](double rho) -> ProfileJet {
        const ProfileJet r = tp->eval(rho);
        const double f = std::sqrt(1 - r.value * r.value);
        const double fp = -r.value / f;
        const double fpp = -1.0 / (f * f * f);
        return {f, fp * r.d1, fpp * r.d1 * r.d1 + fp * r.d2};
    };
}

ProfileChart::ProfileFn cosh_f() {
    return [](double t) -> ProfileJet { return {std::cosh(t), std::sinh(t), std::cosh(t)}; };
}
ProfileChart::ProfileFn catenoid_g(std::shared_ptr<const CatenoidProfile> cp) {
    return [cp](double t) -> ProfileJet { return cp->eval(t); };
}

// bumped south cap of a sphere of chart scale s (local units):
// z(rho) = -sqrt(1 - rho^2) + (t/s) h(rho s / (alpha sqrt(t)))
ProfileChart::ProfileFn bump_g(double t, double alpha, double s) {
    const double w = alpha * std::sqrt(t);  // world support radius
    return [t, s, w](double rho) -> ProfileJet {
        const double root = std::sqrt(1 - rho * rho);
        ProfileJet out{-root, rho / root, 1.0 / (root * root * root)};
        if (t > 0) {
            BumpProfile h;
            const ProfileJet hb = h.eval(rho * s / w);
            out.value += (t / s) * hb.value;
            out.d1 += (t / w) * hb.d1;
            out.d2 += (t * s / (w * w)) * hb.d2;
        }
        return out;
    };
}

struct RingKeyAllocator {
    int next = 0;
    int fresh() { return next++; }
};

// the three patches of one flattened sphere at chart scale s, oriented by sign
void append_sheet(SurfaceAssembly& out, std::shared_ptr<const TransitionProfile> tp, double s,
                  int sign, const std::vector<Disc2>& local_holes,
                  const std::vector<int>& hole_keys, RingKeyAllocator& keys, int sheet_index) {
    const double delta = tp->delta();
    const double theta4 = std::asin(4 * delta);
    const double h = flat_height(delta);
    const int ring4 = keys.fresh();
    const int ring2 = keys.fresh();
    std::ostringstream tag;
    tag << "sheet" << sheet_index;

    ParamPatch cap(std::make_shared<ProfileChart>(sphere_f(), sphere_g(), Vec3::Zero(), s,
                                                  PatchKind::sphere_cap),
                   Rect{theta4, M_PI, 0, 2 * M_PI}, PatchKind::sphere_cap, sign);
    cap.v_periodic = true;
    cap.ring_key_u0 = ring4;
    cap.label = tag.str() + "-cap";

    ParamPatch trans(std::make_shared<ProfileChart>(radial_f(), transition_g(tp), Vec3::Zero(),
                                                    s, PatchKind::graph),
                     Rect{2 * delta, 4 * delta, 0, 2 * M_PI}, PatchKind::graph, sign);
    trans.v_periodic = true;
    trans.ring_key_u0 = ring2;
    trans.ring_key_u1 = ring4;
    trans.label = tag.str() + "-transition";

    ParamPatch flat(std::make_shared<ProfileChart>(radial_f(), const_g(h), Vec3::Zero(), s,
                                                   PatchKind::plane_annulus),
                    Rect{0, 2 * delta, 0, 2 * M_PI}, PatchKind::plane_annulus, sign);
    flat.v_periodic = true;
    flat.ring_key_u1 = ring2;
    flat.holes = local_holes;
    flat.hole_ring_keys = hole_keys;
    flat.label = tag.str() + "-flat";

    out.patches.push_back(std::move(cap));
    out.patches.push_back(std::move(trans));
    out.patches.push_back(std::move(flat));
}

}  // namespace

double flat_height(double delta) { return std::sqrt(1 - 9 * delta * delta); }

double sheet_ratio(double delta, double R, double eta) {
    return 1.0 - (2 * R + 1) * eta / flat_height(delta);
}

double eta_from_theta(double delta, double R, double rho, double theta) {
    return theta * std::min(rho / std::cosh(R + 1), delta * delta * delta / R);
}

GenusSurfaceSpec default_spec(int m, int g, double delta, double R, double theta_eta, double t,
                              double alpha) {
    GenusSurfaceSpec spec;
    spec.m = m;
    spec.g = g;
    spec.delta = delta;
    spec.R = R;
    spec.t = t;
    spec.alpha = alpha;
    const int n = spec.neck_count();
    spec.rho = delta / (4 * (n + 1));
    // polygon radius sits off the dyadic fractions of [0, 2 delta] and the
    // phase off the angular grid lines, so the removed discs land strictly
    // inside quadrature cells after a few bisections
    const double a = 0.26 * delta;
    const double phase = 0.37;
    for (int i = 0; i < n; ++i) {
        const double ang = phase + 2 * M_PI * i / n;
        spec.centers.emplace_back(a * std::cos(ang), a * std::sin(ang));
    }
    spec.eta = eta_from_theta(delta, R, spec.rho, theta_eta);
    return spec;
}

std::vector<std::string> validate(const GenusSurfaceSpec& spec) {
    std::vector<std::string> bad;
    auto fail = [&bad](const std::string& s) { bad.push_back(s); };
    std::ostringstream os;

    if (spec.m < 2) fail("sheet count m must be >= 2");
    if (spec.g < 0) fail("genus g must be >= 0");
    if (!(spec.delta > 0) || spec.delta > TransitionProfile::kDeltaMax) {
        os.str("");
        os << "delta=" << spec.delta << " outside (0, " << TransitionProfile::kDeltaMax << "]";
        fail(os.str());
    }
    if (!(spec.R >= 1)) fail("neck parameter R must be >= 1");
    if (!(spec.rho > 0 && spec.rho < spec.delta / 2)) fail("rho must satisfy 0 < rho < delta/2");
    if (static_cast<int>(spec.centers.size()) != spec.neck_count()) {
        os.str("");
        os << "expected " << spec.neck_count() << " neck centers, got " << spec.centers.size();
        fail(os.str());
    }
    for (size_t i = 0; i < spec.centers.size(); ++i) {
        if (spec.centers[i].norm() + spec.rho > spec.delta / 2 + 1e-15) {
            os.str("");
            os << "neck disc " << i << " leaves D_{delta/2}";
            fail(os.str());
        }
        for (size_t k = i + 1; k < spec.centers.size(); ++k) {
            if ((spec.centers[i] - spec.centers[k]).norm() <= 2 * spec.rho) {
                os.str("");
                os << "neck discs " << i << " and " << k << " overlap";
                fail(os.str());
            }
        }
    }
    if (!(spec.eta > 0)) fail("eta must be positive");
    if (!(spec.eta * std::cosh(spec.R + 1) < spec.rho))
        fail("eta*cosh(R+1) < rho violated (neck does not fit its cylinder)");
    if (!(spec.eta * spec.R < std::pow(spec.delta, 3)))
        fail("eta*R < delta^3 violated (sheet separation too large)");
    if (spec.delta > 0 && spec.delta <= TransitionProfile::kDeltaMax && spec.eta > 0) {
        const double r = sheet_ratio(spec.delta, spec.R, spec.eta);
        if (!(r > 0 && r < 1)) fail("sheet ratio r outside (0,1)");
    }
    if (spec.t < 0) fail("bump amplitude t must be >= 0");
    if (!(spec.alpha > 0)) fail("bump width alpha must be positive");
    if (spec.t > 0) {
        const double r = sheet_ratio(spec.delta, spec.R, spec.eta);
        const double inner = std::pow(r, spec.m - 1);
        if (spec.alpha * std::sqrt(spec.t) > 0.9 * kBumpCapRadius * inner)
            fail("bump support alpha*sqrt(t) leaves the spherical cap region");
    }
    return bad;
}

SurfaceAssembly flattened_sphere(double delta) {
    auto tp = std::make_shared<TransitionProfile>(delta);
    SurfaceAssembly out;
    RingKeyAllocator keys;
    append_sheet(out, tp, 1.0, +1, {}, {}, keys, 0);
    out.meta.genus = 0;
    out.meta.sheets = 1;
    out.meta.closed = true;
    out.meta.containing_radius = 1.0;
    out.meta.in_unit_ball = true;
    out.meta.innermost_cap_patch = 0;
    out.meta.innermost_scale = 1.0;
    return out;
}

SurfaceAssembly flattened_catenoid(double R, double outer_radius_factor) {
    auto cp = std::make_shared<CatenoidProfile>(R);
    const double edge = std::cosh(R + 1);
    const double outer = outer_radius_factor * edge;
    SurfaceAssembly out;
    RingKeyAllocator keys;
    const int ring_top = keys.fresh(), ring_bot = keys.fresh();

    ParamPatch neck(std::make_shared<ProfileChart>(cosh_f(), catenoid_g(cp), Vec3::Zero(), 1.0,
                                                   PatchKind::revolution),
                    Rect{-(R + 1), R + 1, 0, 2 * M_PI}, PatchKind::revolution, +1);
    neck.v_periodic = true;
    neck.ring_key_u0 = ring_bot;
    neck.ring_key_u1 = ring_top;
    neck.label = "neck";

    ParamPatch top(std::make_shared<ProfileChart>(radial_f(), const_g(R + 0.5), Vec3::Zero(),
                                                  1.0, PatchKind::plane_annulus),
                   Rect{edge, outer, 0, 2 * M_PI}, PatchKind::plane_annulus, +1);
    top.v_periodic = true;
    top.ring_key_u0 = ring_top;
    top.label = "top-annulus";

    ParamPatch bot(std::make_shared<ProfileChart>(radial_f(), const_g(-(R + 0.5)), Vec3::Zero(),
                                                  1.0, PatchKind::plane_annulus),
                   Rect{edge, outer, 0, 2 * M_PI}, PatchKind::plane_annulus, -1);
    bot.v_periodic = true;
    bot.ring_key_u0 = ring_bot;
    bot.label = "bottom-annulus";

    out.patches.push_back(std::move(neck));
    out.patches.push_back(std::move(top));
    out.patches.push_back(std::move(bot));
    out.meta.closed = false;
    out.meta.sheets = 1;
    out.meta.containing_radius = std::hypot(outer, R + 0.5);
    out.meta.in_unit_ball = false;
    return out;
}

SurfaceAssembly genus_surface(const GenusSurfaceSpec& spec) {
    {
        const std::vector<std::string> bad = validate(spec);
        if (!bad.empty()) {
            std::string msg = "infeasible surface spec:";
            for (const std::string& b : bad) msg += "\n  - " + b;
            throw InfeasibleSpec(msg);
        }
    }
    auto tp = std::make_shared<TransitionProfile>(spec.delta);
    auto cp = std::make_shared<CatenoidProfile>(spec.R);
    const double h = flat_height(spec.delta);
    const double r = sheet_ratio(spec.delta, spec.R, spec.eta);
    const double edge = std::cosh(spec.R + 1);
    const int n_necks = spec.neck_count();

    // sheet index (1-based) below each neck: necks 0..g connect sheets 1-2,
    // neck g+j connects sheets j+1, j+2
    std::vector<int> upper_sheet(n_necks, 1);
    for (int j = spec.g + 1; j < n_necks; ++j) upper_sheet[j] = j - spec.g + 1;

    std::vector<double> scale(spec.m + 1);
    for (int k = 1; k <= spec.m; ++k) scale[k] = std::pow(r, k - 1);

    RingKeyAllocator keys;
    std::vector<int> top_key(n_necks), bottom_key(n_necks);
    for (int j = 0; j < n_necks; ++j) {
        top_key[j] = keys.fresh();
        bottom_key[j] = keys.fresh();
    }

    SurfaceAssembly out;
    for (int k = 1; k <= spec.m; ++k) {
        const double s = scale[k];
        const int sign = (k % 2 == 1) ? +1 : -1;
        std::vector<Disc2> holes;
        std::vector<int> hole_keys;
        for (int j = 0; j < n_necks; ++j) {
            double local_radius = 0;
            if (upper_sheet[j] == k) {
                local_radius = spec.eta * edge;  // neck scale eta*s_k over sheet scale s_k
                hole_keys.push_back(top_key[j]);
            } else if (upper_sheet[j] == k - 1) {
                local_radius = spec.eta * edge / r;
                hole_keys.push_back(bottom_key[j]);
            } else {
                continue;
            }
            holes.push_back(Disc2{spec.centers[j] / s, local_radius});
        }
        // geometric re-check of the punctures on this sheet
        for (size_t a = 0; a < holes.size(); ++a) {
            if (holes[a].center.norm() + holes[a].radius >= 2 * spec.delta)
                throw GluingConflict("neck puncture leaves the flat disc");
            for (size_t b = a + 1; b < holes.size(); ++b)
                if ((holes[a].center - holes[b].center).norm() <=
                    holes[a].radius + holes[b].radius)
                    throw GluingConflict("neck punctures overlap on a shared sheet");
        }
        append_sheet(out, tp, s, sign, holes, hole_keys, keys, k);
    }

    for (int j = 0; j < n_necks; ++j) {
        const int k = upper_sheet[j];
        const double s_up = scale[k], s_dn = scale[k + 1];
        const double z_mid = 0.5 * (s_up + s_dn) * h;
        const Vec3 center(spec.centers[j].x(), spec.centers[j].y(), z_mid);
        const int sign = (k % 2 == 1) ? +1 : -1;
        ParamPatch neck(std::make_shared<ProfileChart>(cosh_f(), catenoid_g(cp), center,
                                                       spec.eta * s_up, PatchKind::revolution),
                        Rect{-(spec.R + 1), spec.R + 1, 0, 2 * M_PI}, PatchKind::revolution,
                        sign);
        neck.v_periodic = true;
        neck.ring_key_u1 = top_key[j];
        neck.ring_key_u0 = bottom_key[j];
        std::ostringstream tag;
        tag << "neck" << j << "-sheets" << k << "." << (k + 1);
        neck.label = tag.str();
        out.patches.push_back(std::move(neck));
    }

    out.meta.genus = spec.g;
    out.meta.sheets = spec.m;
    out.meta.closed = true;
    out.meta.containing_radius = 1.0;
    out.meta.in_unit_ball = true;
    out.meta.innermost_cap_patch = 3 * (spec.m - 1);  // cap patch of sheet m
    out.meta.innermost_scale = scale[spec.m];

    if (spec.t > 0) return south_pole_bump(out, BumpSpec{spec.t, spec.alpha});
    return out;
}

SurfaceAssembly south_pole_bump(const SurfaceAssembly& assembly, const BumpSpec& bump) {
    if (bump.t == 0) return assembly;
    if (bump.t < 0) throw SupportTooLarge("bump amplitude must be nonnegative");
    if (assembly.meta.innermost_cap_patch < 0)
        throw SupportTooLarge("assembly has no designated innermost spherical cap");
    const int idx = assembly.meta.innermost_cap_patch;
    const ParamPatch& cap = assembly.patches[idx];
    const ProfileChart* pc = cap.profile();
    if (!pc || cap.kind != PatchKind::sphere_cap || cap.domain.u1 < M_PI - 1e-12)
        throw SupportTooLarge("innermost patch is not a south-polar spherical cap");

    const double s = pc->scale();
    const double support = bump.alpha * std::sqrt(bump.t);
    if (support > 0.9 * kBumpCapRadius * s)
        throw SupportTooLarge("bump support alpha*sqrt(t) leaves the spherical cap region");

    const double theta_b = M_PI - std::asin(kBumpCapRadius);
    SurfaceAssembly out = assembly;
    int ring_key = 1 << 20;  // fresh key range for the split ring
    for (const ParamPatch& p : assembly.patches) {
        ring_key = std::max({ring_key, p.ring_key_u0 + 1, p.ring_key_u1 + 1});
        for (int hk : p.hole_ring_keys) ring_key = std::max(ring_key, hk + 1);
    }

    ParamPatch trimmed = cap;
    trimmed.domain.u1 = theta_b;
    trimmed.ring_key_u1 = ring_key;

    ParamPatch bumped(std::make_shared<ProfileChart>(radial_f(), bump_g(bump.t, bump.alpha, s),
                                                     pc->center(), s, PatchKind::graph),
                      Rect{0, kBumpCapRadius, 0, 2 * M_PI}, PatchKind::graph,
                      -cap.orientation);
    bumped.v_periodic = true;
    bumped.ring_key_u1 = ring_key;
    bumped.label = cap.label + "-bumped";

    out.patches[idx] = std::move(trimmed);
    out.patches.push_back(std::move(bumped));
    return out;
}

SurfaceAssembly rescale_to_area(const SurfaceAssembly& assembly, double target_area,
                                const QuadOptions& opt) {
    IntegrandSpec area_only;
    area_only.ncomp = 1;
    area_only.needs_curvature = false;
    area_only.eval = [](const QuadPoint&, double* out) { out[0] = 1.0; };
    const QuadResult r = integrate_assembly(assembly, area_only, opt);
    const double area = r.values[0];
    if (!(area > 0)) throw NonPositiveEnergy("assembly has nonpositive area");
    return scaled(assembly, std::sqrt(target_area / area));
}

namespace {

double patch_area(const ParamPatch& patch, const QuadOptions& opt) {
    IntegrandSpec area_only;
    area_only.ncomp = 1;
    area_only.needs_curvature = false;
    area_only.eval = [](const QuadPoint&, double* out) { out[0] = 1.0; };
    return integrate_patch(patch, area_only, opt).values[0];
}

double patch_willmore(const ParamPatch& patch, const QuadOptions& opt) {
    IntegrandSpec w;
    w.ncomp = 1;
    w.needs_curvature = true;
    w.eval = [](const QuadPoint& q, double* out) { out[0] = q.H * q.H; };
    return 0.25 * integrate_patch(patch, w, opt).values[0];
}

// the two patches the bump swaps: south sub-cap of the innermost sheet and
// the bumped graph over the same region
std::pair<ParamPatch, ParamPatch> bump_swap_patches(const GenusSurfaceSpec& spec, double t) {
    const double r = sheet_ratio(spec.delta, spec.R, spec.eta);
    const double s = std::pow(r, spec.m - 1);
    const double theta_b = M_PI - std::asin(kBumpCapRadius);
    ParamPatch south(std::make_shared<ProfileChart>(sphere_f(), sphere_g(), Vec3::Zero(), s,
                                                    PatchKind::sphere_cap),
                     Rect{theta_b, M_PI, 0, 2 * M_PI}, PatchKind::sphere_cap, +1);
    south.v_periodic = true;
    ParamPatch bumped(std::make_shared<ProfileChart>(radial_f(), bump_g(t, spec.alpha, s),
                                                     Vec3::Zero(), s, PatchKind::graph),
                      Rect{0, kBumpCapRadius, 0, 2 * M_PI}, PatchKind::graph, -1);
    bumped.v_periodic = true;
    return {south, bumped};
}

}  // namespace

double bump_area_delta(const GenusSurfaceSpec& spec, double t, const QuadOptions& opt) {
    if (t <= 0) return 0;
    const double support = spec.alpha * std::sqrt(t);
    const double r = sheet_ratio(spec.delta, spec.R, spec.eta);
    const double s = std::pow(r, spec.m - 1);
    if (support > 0.9 * kBumpCapRadius * s)
        throw SupportTooLarge("bump support alpha*sqrt(t) leaves the spherical cap region");
    auto [south, bumped] = bump_swap_patches(spec, t);
    QuadOptions tight = opt;
    tight.tol = std::min(opt.tol, 1e-9);
    return patch_area(bumped, tight) - patch_area(south, tight);
}

double bump_willmore_delta(const GenusSurfaceSpec& spec, double t, const QuadOptions& opt) {
    if (t <= 0) return 0;
    auto [south, bumped] = bump_swap_patches(spec, t);
    QuadOptions tight = opt;
    tight.tol = std::min(opt.tol, 1e-9);
    return patch_willmore(bumped, tight) - patch_willmore(south, tight);
}

double solve_bump_amplitude(const GenusSurfaceSpec& spec, double target_area,
                            const QuadOptions& opt) {
    GenusSurfaceSpec base = spec;
    base.t = 0;
    SurfaceAssembly assembly = genus_surface(base);
    IntegrandSpec area_only;
    area_only.ncomp = 1;
    area_only.needs_curvature = false;
    area_only.eval = [](const QuadPoint&, double* out) { out[0] = 1.0; };
    QuadOptions area_opt = opt;
    area_opt.tol = std::min(opt.tol, 1e-7);
    const double area0 = integrate_assembly(assembly, area_only, area_opt).values[0];
    const double deficit = target_area * (1 + 1e-9) - area0;
    if (deficit <= 0) return 0;

    // quadratic model dA ~ c t^2, then secant refinement on the measured gain
    double t = std::sqrt(deficit / 0.30);
    double gain = bump_area_delta(spec, t, opt);
    for (int it = 0; it < 60 && (gain < deficit || gain > 2 * deficit); ++it) {
        t *= std::sqrt(deficit / gain) * (gain < deficit ? 1.02 : 1.0);
        gain = bump_area_delta(spec, t, opt);
    }
    if (gain < deficit) throw SupportTooLarge("bump cannot supply the required area");
    return t;
}

std::string spec_to_json(const GenusSurfaceSpec& spec) {
    nlohmann::json j;
    j["spec_version"] = 1;
    j["m"] = spec.m;
    j["g"] = spec.g;
    j["delta"] = spec.delta;
    j["R"] = spec.R;
    j["eta"] = spec.eta;
    j["rho"] = spec.rho;
    nlohmann::json centers = nlohmann::json::array();
    for (const Vec2& c : spec.centers) centers.push_back({c.x(), c.y()});
    j["centers"] = centers;
    j["t"] = spec.t;
    j["alpha"] = spec.alpha;
    return j.dump(2);
}

GenusSurfaceSpec spec_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    static const char* known[] = {"spec_version", "m", "g", "delta", "R",
                                  "eta",          "rho", "centers", "t", "alpha"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InfeasibleSpec("unknown key in surface spec: " + it.key());
    }
    if (j.value("spec_version", 0) != 1) throw InfeasibleSpec("unsupported spec_version");
    GenusSurfaceSpec spec;
    spec.m = j.at("m").get<int>();
    spec.g = j.at("g").get<int>();
    spec.delta = j.at("delta").get<double>();
    spec.R = j.at("R").get<double>();
    spec.eta = j.at("eta").get<double>();
    spec.rho = j.at("rho").get<double>();
    for (const auto& c : j.at("centers"))
        spec.centers.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    spec.t = j.at("t").get<double>();
    spec.alpha = j.at("alpha").get<double>();
    return spec;
}

}  // namespace hforge
