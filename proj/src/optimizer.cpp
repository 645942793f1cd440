#include "hforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "hforge/errors.hpp"
#include "hforge/runtime.hpp"

namespace hforge {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

EnergyReport quick_report(const SurfaceAssembly& assembly, const QuadOptions& opt) {
    return evaluate_energy(assembly, opt);
}

}  // namespace

std::string SweepTable::csv_header() {
    return "m,g,delta,R,theta_eta,eta,rho,t,alpha,feasible,area,willmore,total_gauss,excess";
}

std::string SweepTable::to_csv() const {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const SweepRow& r : rows) {
        os << r.spec.m << ',' << r.spec.g << ',' << fmt(r.spec.delta) << ',' << fmt(r.spec.R)
           << ',' << fmt(r.theta_eta) << ',' << fmt(r.spec.eta) << ',' << fmt(r.spec.rho) << ','
           << fmt(r.spec.t) << ',' << fmt(r.spec.alpha) << ',' << (r.feasible ? 1 : 0) << ',';
        if (r.feasible)
            os << fmt(r.report.area) << ',' << fmt(r.report.willmore) << ','
               << fmt(r.report.total_gauss) << ',' << fmt(r.excess);
        else
            os << ",,,";
        os << '\n';
    }
    return os.str();
}

SweepTable sweep(int m, int g, const std::vector<double>& deltas, const std::vector<double>& Rs,
                 const std::vector<double>& theta_etas, const std::vector<double>& ts,
                 const QuadOptions& opt) {
    std::vector<SweepRow> grid;
    for (double d : deltas)
        for (double R : Rs)
            for (double th : theta_etas)
                for (double t : ts) {
                    SweepRow row;
                    row.theta_eta = th;
                    if (d > 0 && d <= TransitionProfile::kDeltaMax && R >= 1) {
                        row.spec = default_spec(m, g, d, R, th, t);
                        row.feasible = validate(row.spec).empty();
                    } else {
                        row.spec = GenusSurfaceSpec{};
                        row.spec.m = m;
                        row.spec.g = g;
                        row.spec.delta = d;
                        row.spec.R = R;
                        row.spec.t = t;
                        row.feasible = false;
                    }
                    grid.push_back(row);
                }

    auto rows = map_ordered(static_cast<int>(grid.size()), [&](int i) {
        SweepRow row = grid[i];
        if (!row.feasible) return row;
        try {
            const SurfaceAssembly assembly = genus_surface(row.spec);
            row.report = quick_report(assembly, opt);
            row.excess = row.report.willmore - 4 * M_PI * row.spec.m;
        } catch (const ForgeError&) {
            row.feasible = false;
        }
        return row;
    });
    SweepTable table;
    table.rows = std::move(rows);
    return table;
}

FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw ForgeError("fit needs at least two matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double e = ys[i] - fit.slope * xs[i] - fit.intercept;
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

FitResult fit_decay(const std::vector<double>& R_list, const std::vector<double>& W_list) {
    if (R_list.size() < 3) throw ForgeError("decay fit needs at least three points");
    std::vector<double> logs;
    for (double w : W_list) {
        if (!(w > 0)) throw NonPositiveEnergy("decay fit requires positive energies");
        logs.push_back(std::log(w));
    }
    return fit_linear(R_list, logs);
}

namespace {

struct SearchContext {
    int m, g;
    QuadOptions opt;
    long evals = 0;
    long budget = 0;
    double best_value = std::numeric_limits<double>::infinity();
    GenusSurfaceSpec best_spec;
    bool has_best = false;
};

// x = (log delta, log R, log theta_eta, log t)
GenusSurfaceSpec spec_from_log(const SearchContext& ctx, const std::array<double, 4>& x) {
    return default_spec(ctx.m, ctx.g, std::exp(x[0]), std::exp(x[1]), std::exp(x[2]),
                        std::exp(x[3]));
}

double objective(SearchContext& ctx, const std::array<double, 4>& x) {
    if (ctx.evals >= ctx.budget) return std::numeric_limits<double>::infinity();
    ++ctx.evals;
    GenusSurfaceSpec spec;
    try {
        spec = spec_from_log(ctx, x);
        if (!validate(spec).empty()) return std::numeric_limits<double>::infinity();
        const SurfaceAssembly assembly = genus_surface(spec);
        QuadOptions coarse = ctx.opt;
        coarse.tol = std::max(ctx.opt.tol, 1e-4);
        const EnergyReport rep = quick_report(assembly, coarse);
        const double target = 4 * M_PI * ctx.m;
        double value = rep.willmore - target;
        // surfaces that cannot be scaled down into the unit ball at the target
        // area carry a steep penalty proportional to the shortfall
        if (rep.area < target) value += 10 * (target - rep.area) / target + 0.05;
        if (value < ctx.best_value) {
            ctx.best_value = value;
            ctx.best_spec = spec;
            ctx.has_best = true;
        }
        return value;
    } catch (const ForgeError&) {
        return std::numeric_limits<double>::infinity();
    }
}

void nelder_mead(SearchContext& ctx, std::array<double, 4> seed, std::mt19937_64& rng) {
    constexpr int N = 4;
    std::uniform_real_distribution<double> jitter(-0.02, 0.02);
    std::array<std::array<double, N>, N + 1> x;
    std::array<double, N + 1> f;
    for (int i = 0; i <= N; ++i) {
        x[i] = seed;
        if (i > 0) x[i][i - 1] += 0.35 + jitter(rng);
        f[i] = objective(ctx, x[i]);
    }
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    for (int it = 0; it < 400 && ctx.evals < ctx.budget; ++it) {
        std::array<int, N + 1> idx;
        for (int i = 0; i <= N; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        std::array<std::array<double, N>, N + 1> xs;
        std::array<double, N + 1> fs;
        for (int i = 0; i <= N; ++i) {
            xs[i] = x[idx[i]];
            fs[i] = f[idx[i]];
        }
        x = xs;
        f = fs;
        if (std::isfinite(f[0]) && std::isfinite(f[N]) && f[N] - f[0] < 1e-4) break;

        std::array<double, N> centroid{};
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) centroid[k] += x[i][k] / N;
        auto blend = [&](double w) {
            std::array<double, N> p;
            for (int k = 0; k < N; ++k) p[k] = centroid[k] + w * (centroid[k] - x[N][k]);
            return p;
        };
        const auto xr = blend(alpha);
        const double fr = objective(ctx, xr);
        if (fr < f[0]) {
            const auto xe = blend(gamma);
            const double fe = objective(ctx, xe);
            if (fe < fr) {
                x[N] = xe;
                f[N] = fe;
            } else {
                x[N] = xr;
                f[N] = fr;
            }
        } else if (fr < f[N - 1]) {
            x[N] = xr;
            f[N] = fr;
        } else {
            const auto xc = blend(fr < f[N] ? rho : -rho);
            const double fc = objective(ctx, xc);
            if (fc < std::min(fr, f[N])) {
                x[N] = xc;
                f[N] = fc;
            } else {
                for (int i = 1; i <= N; ++i) {
                    for (int k = 0; k < N; ++k) x[i][k] = x[0][k] + sigma * (x[i][k] - x[0][k]);
                    f[i] = objective(ctx, x[i]);
                }
            }
        }
    }
}

}  // namespace

MinimizeResult minimize_excess(int m, int g, double eps_target, int budget,
                               const QuadOptions& opt, uint64_t seed) {
    if (!(eps_target > 0)) throw ForgeError("eps_target must be positive");
    SearchContext ctx;
    ctx.m = m;
    ctx.g = g;
    ctx.opt = opt;
    ctx.budget = budget;
    std::mt19937_64 rng(seed);

    // three seeded corners; the bump amplitude seed comes from the measured
    // area gain so the simplex starts inside the feasible slab
    const double corners[3][3] = {{0.05, 4.0, 0.2}, {0.025, 5.0, 0.1}, {0.1, 3.0, 0.4}};
    for (const auto& c : corners) {
        if (ctx.evals >= ctx.budget) break;
        GenusSurfaceSpec probe = default_spec(m, g, c[0], c[1], c[2]);
        double t_seed;
        try {
            t_seed = 1.10 * solve_bump_amplitude(probe, 4 * M_PI * m, opt);
        } catch (const ForgeError&) {
            continue;
        }
        if (!(t_seed > 0)) t_seed = 1e-4;
        std::array<double, 4> x = {std::log(c[0]), std::log(c[1]), std::log(c[2]),
                                   std::log(t_seed)};
        nelder_mead(ctx, x, rng);
    }

    MinimizeResult out;
    out.evaluations = ctx.evals;
    if (!ctx.has_best) {
        out.message = "budget exhausted without a feasible candidate";
        return out;
    }

    // final candidate: re-solve the bump for exact area feasibility, rescale,
    // and recompute the excess at tol/10
    GenusSurfaceSpec best = ctx.best_spec;
    const double target = 4 * M_PI * m;
    try {
        const double t_min = solve_bump_amplitude(best, target, opt);
        if (best.t < t_min) best.t = t_min;
    } catch (const ForgeError&) {
        // keep the searched t
    }
    SurfaceAssembly assembly = genus_surface(best);
    QuadOptions fine = opt;
    fine.tol = opt.tol / 10;
    assembly = rescale_to_area(assembly, target, fine);
    const EnergyReport rep = evaluate_energy(assembly, fine);
    out.spec = best;
    out.report = rep;
    out.excess = rep.willmore - target;
    out.area = rep.area;
    out.in_unit_ball = assembly.meta.in_unit_ball;
    out.success = out.excess < eps_target && out.in_unit_ball &&
                  std::fabs(out.area - target) < 1e-4;
    out.message = out.success ? "target reached" : "budget exhausted; returning best found";
    return out;
}

DivergenceDemo helfrich_divergence_demo(const HelfrichParams& params,
                                        const std::vector<int>& g_list, const QuadOptions& opt,
                                        double delta, double R) {
    if (!(params.chi_K >= 0)) throw ForgeError("divergence demo expects chi_K >= 0");
    DivergenceDemo demo;
    auto rows = map_ordered(static_cast<int>(g_list.size()), [&](int i) {
        const int g = g_list[i];
        const GenusSurfaceSpec spec = default_spec(2, g, delta, R, 0.5);
        const SurfaceAssembly assembly = genus_surface(spec);
        const EnergyReport rep = evaluate_energy(assembly, opt, params);
        DivergenceRow row;
        row.g = g;
        row.energy = rep.helfrich;
        row.willmore = rep.willmore;
        row.total_gauss = rep.total_gauss;
        return row;
    });
    demo.rows = std::move(rows);
    std::vector<double> xs, ys;
    for (const DivergenceRow& r : demo.rows) {
        xs.push_back(r.g);
        ys.push_back(r.energy);
    }
    demo.slope_fit = fit_linear(xs, ys);
    return demo;
}

}  // namespace hforge
