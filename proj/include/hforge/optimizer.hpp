#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hforge/constructions.hpp"
#include "hforge/energy.hpp"

namespace hforge {

struct SweepRow {
    GenusSurfaceSpec spec;
    double theta_eta = 0;
    bool feasible = false;
    EnergyReport report;
    double excess = 0;  // willmore - 4 pi m
};

struct SweepTable {
    std::vector<SweepRow> rows;
    static std::string csv_header();
    std::string to_csv() const;
};

// grid sweep at fixed (m, g); infeasible points are marked, not evaluated
SweepTable sweep(int m, int g, const std::vector<double>& deltas,
                 const std::vector<double>& Rs, const std::vector<double>& theta_etas,
                 const std::vector<double>& ts, const QuadOptions& opt);

struct FitResult {
    double slope = 0, intercept = 0, residual = 0;  // RMS residual
};

// least squares y ~ slope * x + intercept
FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// least squares of log W against R; the slope estimates the decay rate
FitResult fit_decay(const std::vector<double>& R_list, const std::vector<double>& W_list);

struct MinimizeResult {
    bool success = false;
    GenusSurfaceSpec spec;
    EnergyReport report;     // fresh evaluation at tol/10 after rescaling
    double excess = 0;
    double area = 0;
    bool in_unit_ball = false;
    long evaluations = 0;
    std::string message;
};

// derivative-free search over (delta, R, theta_eta, t) within feasibility for
// the smallest Willmore excess at area 4 pi m; success iff excess < eps_target
MinimizeResult minimize_excess(int m, int g, double eps_target, int budget,
                               const QuadOptions& opt, uint64_t seed = 1);

struct DivergenceRow {
    int g = 0;
    double energy = 0;
    double willmore = 0;
    double total_gauss = 0;
};

struct DivergenceDemo {
    std::vector<DivergenceRow> rows;
    FitResult slope_fit;  // energy against genus
};

// growing-genus family showing E -> -inf for chi_K > 0
DivergenceDemo helfrich_divergence_demo(const HelfrichParams& params,
                                        const std::vector<int>& g_list, const QuadOptions& opt,
                                        double delta = 0.05, double R = 4.0);

}  // namespace hforge
