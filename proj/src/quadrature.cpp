#include "hforge/quadrature.hpp"

#include <cmath>

#include "hforge/errors.hpp"
#include "hforge/runtime.hpp"

namespace hforge {

namespace {

constexpr int kGL = 7;
// 7-point Gauss-Legendre nodes and weights on [-1, 1]
const double kNode[kGL] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                           0.0,
                           0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
const double kWeight[kGL] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                             0.4179591836734694,
                             0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

using Values = std::array<double, kMaxComponents>;

enum class DiscRelation { outside, covers_cell, mixed };

double wrap_angle_from(double a, double base) {
    double two_pi = 2 * M_PI;
    double x = std::fmod(a - base, two_pi);
    if (x < 0) x += two_pi;
    return base + x;
}

// relation between the annular sector {t in [t0,t1], phi in [a0,a1]} (profile
// plane) and a removed disc; angular width must be <= pi/2
DiscRelation sector_disc_relation(double t0, double t1, double a0, double a1, const Disc2& d) {
    const double cr = d.center.norm();
    double th = cr > 0 ? std::atan2(d.center.y(), d.center.x()) : a0;
    th = wrap_angle_from(th, a0 - M_PI);
    const bool in_range = th >= a0 && th <= a1;

    double dmin;
    if (in_range) {
        dmin = std::max({0.0, t0 - cr, cr - t1});
    } else {
        auto ray_dist = [&](double ang) {
            Vec2 e(std::cos(ang), std::sin(ang));
            double s = std::clamp(d.center.dot(e), t0, t1);
            return (d.center - s * e).norm();
        };
        dmin = std::min(ray_dist(a0), ray_dist(a1));
    }
    if (dmin >= d.radius) return DiscRelation::outside;

    double dmax = 0;
    for (double t : {t0, t1})
        for (double a : {a0, a1}) {
            Vec2 q(t * std::cos(a), t * std::sin(a));
            dmax = std::max(dmax, (d.center - q).norm());
        }
    double anti = wrap_angle_from(th + M_PI, a0 - M_PI);
    if (anti >= a0 && anti <= a1) dmax = std::max(dmax, cr + t1);
    if (dmax <= d.radius) return DiscRelation::covers_cell;
    return DiscRelation::mixed;
}

// disc strictly inside the open sector (so its integral can be deducted whole)
bool disc_inside_sector(double t0, double t1, double a0, double a1, const Disc2& d) {
    const double cr = d.center.norm();
    if (cr - d.radius <= t0 || cr + d.radius >= t1) return false;
    double th = wrap_angle_from(std::atan2(d.center.y(), d.center.x()), a0 - M_PI);
    if (th <= a0 || th >= a1) return false;
    const double margin = std::min(std::sin(th - a0), std::sin(a1 - th)) * cr;
    return margin > d.radius;
}

class PatchIntegrator {
public:
    PatchIntegrator(const ParamPatch& patch, const IntegrandSpec& spec, const QuadOptions& opt,
                    const std::optional<BallWindow>& window)
        : patch_(patch), spec_(spec), opt_(opt), window_(window) {
        const ProfileChart* pc = patch.profile();
        bool axis_window = true;
        if (window && pc) {
            Vec2 off = window->center.head<2>() - pc->center().head<2>();
            axis_window = off.norm() <= 1e-12 * std::max(1.0, std::fabs(pc->scale()));
        }
        one_dim_ = pc && patch.holes.empty() && (!window || axis_window);
        phi_mid_ = 0.5 * (patch.domain.v0 + patch.domain.v1);
    }

    QuadResult run() {
        const Rect& d = patch_.domain;
        QuadResult res;
        res.ncomp = spec_.ncomp;
        if (one_dim_) {
            const int n = std::max(2, opt_.init_u);
            const double tol_cell = opt_.tol / n;
            for (int i = 0; i < n; ++i) {
                double a = d.u0 + (d.u1 - d.u0) * i / n;
                double b = d.u0 + (d.u1 - d.u0) * (i + 1) / n;
                Values base = eval_line(a, b);
                refine_line(a, b, base, tol_cell, 0);
            }
        } else {
            int nu = std::max(2, opt_.init_u);
            int nv = std::max(patch_.v_periodic ? 8 : 2, opt_.init_v);
            const double tol_cell = opt_.tol / (nu * nv);
            for (int i = 0; i < nu; ++i) {
                for (int k = 0; k < nv; ++k) {
                    double u0 = d.u0 + (d.u1 - d.u0) * i / nu;
                    double u1 = d.u0 + (d.u1 - d.u0) * (i + 1) / nu;
                    double v0 = d.v0 + (d.v1 - d.v0) * k / nv;
                    double v1 = d.v0 + (d.v1 - d.v0) * (k + 1) / nv;
                    process_cell(u0, u1, v0, v1, tol_cell, 0, std::nullopt);
                }
            }
        }
        for (int c = 0; c < spec_.ncomp; ++c) {
            res.values[c] = total_[c];
            res.errors[c] = err_[c];
            if (err_[c] > opt_.tol * 1.02)
                throw NoConvergence("quadrature error estimate above tolerance after budget");
        }
        res.evals = evals_;
        return res;
    }

private:
    const ParamPatch& patch_;
    const IntegrandSpec& spec_;
    const QuadOptions& opt_;
    const std::optional<BallWindow>& window_;
    bool one_dim_ = false;
    double phi_mid_ = 0;
    long evals_ = 0;
    Values total_{}, err_{};

    bool in_window(const Vec3& p) const {
        return !window_ || (p - window_->center).norm() <= window_->radius;
    }

    void sample(double u, double v, bool apply_masks, Values& acc, double w) {
        ++evals_;
        const ChartJet jet = patch_.jet(u, v);
        if (apply_masks) {
            if (!in_window(jet.p)) return;
            if (!patch_.holes.empty()) {
                const Vec2 q(u * std::cos(v), u * std::sin(v));
                for (const Disc2& d : patch_.holes)
                    if ((q - d.center).squaredNorm() < d.radius * d.radius) return;
            }
        }
        QuadPoint qp;
        qp.p = jet.p;
        double jac;
        if (spec_.needs_curvature) {
            CurvaturePoint cp = curvature_from_jet(patch_, u, v, jet);
            qp.H = cp.H;
            qp.K = cp.K;
            jac = cp.dA;
        } else {
            jac = jet.pu.cross(jet.pv).norm();
        }
        double vals[kMaxComponents];
        spec_.eval(qp, vals);
        for (int c = 0; c < spec_.ncomp; ++c) acc[c] += w * vals[c] * jac;
    }

    // --- 1D reduction (axisymmetric patch, angular factor exact) ---

    Values eval_line(double a, double b) {
        Values acc{};
        const double h = 0.5 * (b - a), m = 0.5 * (a + b);
        for (int i = 0; i < kGL; ++i) sample(m + h * kNode[i], phi_mid_, true, acc, kWeight[i]);
        const double span = patch_.domain.v1 - patch_.domain.v0;
        for (double& x : acc) x *= h * span;
        return acc;
    }

    void refine_line(double a, double b, const Values& base, double tol_cell, int depth) {
        const double m = 0.5 * (a + b);
        Values left = eval_line(a, m), right = eval_line(m, b);
        double diff = 0;
        for (int c = 0; c < spec_.ncomp; ++c)
            diff = std::max(diff, std::fabs(base[c] - left[c] - right[c]));
        if (diff <= tol_cell || depth >= opt_.max_depth || evals_ > opt_.max_evals) {
            for (int c = 0; c < spec_.ncomp; ++c) {
                total_[c] += left[c] + right[c];
                err_[c] += diff;
            }
            return;
        }
        refine_line(a, m, left, tol_cell / 2, depth + 1);
        refine_line(m, b, right, tol_cell / 2, depth + 1);
    }

    // --- 2D cells ---

    Values eval_cell(double u0, double u1, double v0, double v1, bool apply_masks) {
        Values acc{};
        const double hu = 0.5 * (u1 - u0), cu = 0.5 * (u0 + u1);
        const double hv = 0.5 * (v1 - v0), cv = 0.5 * (v0 + v1);
        for (int i = 0; i < kGL; ++i)
            for (int k = 0; k < kGL; ++k)
                sample(cu + hu * kNode[i], cv + hv * kNode[k], apply_masks, acc,
                       kWeight[i] * kWeight[k]);
        for (double& x : acc) x *= hu * hv;
        return acc;
    }

    // integral of the integrand over one removed disc, exact for charts that
    // are flat across the disc (the only place holes occur)
    Values disc_deduction(const Disc2& d) {
        const double t = d.center.norm();
        const double phi = std::atan2(d.center.y(), d.center.x());
        const ChartJet jet = patch_.jet(t, phi);
        QuadPoint qp;
        qp.p = jet.p;
        double jac;
        if (spec_.needs_curvature) {
            CurvaturePoint cp = curvature_from_jet(patch_, t, phi, jet);
            qp.H = cp.H;
            qp.K = cp.K;
            jac = cp.dA;
        } else {
            jac = jet.pu.cross(jet.pv).norm();
        }
        double vals[kMaxComponents];
        spec_.eval(qp, vals);
        Values out{};
        const double plane_area = M_PI * d.radius * d.radius;
        for (int c = 0; c < spec_.ncomp; ++c) out[c] = vals[c] * (jac / t) * plane_area;
        return out;
    }

    void process_cell(double u0, double u1, double v0, double v1, double tol_cell, int depth,
                      std::optional<Values> parent) {
        // classify against removed discs (exact in the profile plane)
        std::vector<const Disc2*> contained;
        bool has_straddling = false;
        if (!patch_.holes.empty()) {
            if (!patch_.profile()) {
                has_straddling = true;  // generic chart: holes only via node masks
            } else {
                for (const Disc2& d : patch_.holes) {
                    switch (sector_disc_relation(u0, u1, v0, v1, d)) {
                        case DiscRelation::outside: break;
                        case DiscRelation::covers_cell: return;  // cell inactive
                        case DiscRelation::mixed:
                            if (!window_ && disc_inside_sector(u0, u1, v0, v1, d))
                                contained.push_back(&d);
                            else
                                has_straddling = true;
                            break;
                    }
                }
            }
            // node indicators cover every disc once any disc needs them
            if (has_straddling) contained.clear();
        }

        const bool windowed = window_.has_value();
        const bool node_masks = windowed || has_straddling;
        Values base = parent && !node_masks ? *parent
                                            : eval_cell(u0, u1, v0, v1, node_masks);

        const double um = 0.5 * (u0 + u1), vm = 0.5 * (v0 + v1);
        Values kids{};
        Values child[4];
        const double cu[4][2] = {{u0, um}, {um, u1}, {u0, um}, {um, u1}};
        const double cv[4][2] = {{v0, vm}, {v0, vm}, {vm, v1}, {vm, v1}};
        for (int q = 0; q < 4; ++q) {
            child[q] = eval_cell(cu[q][0], cu[q][1], cv[q][0], cv[q][1], node_masks);
            for (int c = 0; c < spec_.ncomp; ++c) kids[c] += child[q][c];
        }
        double diff = 0;
        for (int c = 0; c < spec_.ncomp; ++c) diff = std::max(diff, std::fabs(base[c] - kids[c]));

        const bool must_split = has_straddling;
        if ((diff <= tol_cell && !must_split) || depth >= opt_.max_depth ||
            evals_ > opt_.max_evals) {
            for (int c = 0; c < spec_.ncomp; ++c) {
                total_[c] += kids[c];
                err_[c] += diff;
            }
            for (const Disc2* d : contained) {
                Values ded = disc_deduction(*d);
                for (int c = 0; c < spec_.ncomp; ++c) {
                    total_[c] -= ded[c];
                    err_[c] += 1e-6 * std::fabs(ded[c]);
                }
            }
            return;
        }
        for (int q = 0; q < 4; ++q)
            process_cell(cu[q][0], cu[q][1], cv[q][0], cv[q][1], tol_cell / 4, depth + 1,
                         node_masks ? std::nullopt : std::make_optional(child[q]));
    }
};

}  // namespace

void QuadResult::accumulate(const QuadResult& other, double weight) {
    ncomp = std::max(ncomp, other.ncomp);
    for (int c = 0; c < other.ncomp; ++c) {
        values[c] += weight * other.values[c];
        errors[c] += std::fabs(weight) * other.errors[c];
    }
    evals += other.evals;
}

QuadResult integrate_patch(const ParamPatch& patch, const IntegrandSpec& spec,
                           const QuadOptions& opt, const std::optional<BallWindow>& window) {
    return PatchIntegrator(patch, spec, opt, window).run();
}

QuadResult integrate_assembly(const SurfaceAssembly& assembly, const IntegrandSpec& spec,
                              const QuadOptions& opt, const std::optional<BallWindow>& window) {
    QuadOptions per_patch = opt;
    per_patch.tol = opt.tol / std::max<size_t>(1, assembly.patches.size());
    auto results = map_ordered(static_cast<int>(assembly.patches.size()), [&](int i) {
        return integrate_patch(assembly.patches[i], spec, per_patch, window);
    });
    QuadResult total;
    total.ncomp = spec.ncomp;
    for (const QuadResult& r : results) total.accumulate(r, assembly.multiplicity);
    return total;
}

}  // namespace hforge
