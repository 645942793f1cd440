#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hforge/constructions.hpp"
#include "hforge/surface.hpp"

namespace hforge {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    double expected = 0;
    double tol = 0;
    std::string note;
};

const std::vector<std::string>& suite_names();

// runs one named verification suite (profiles, curvature, gauss-bonnet,
// mueller-roeger, li-yau, convergence, decay, divergence)
std::vector<CheckResult> run_suite(const std::string& suite, uint64_t seed = 1);

// deterministic plain-text report, one line per check
std::string format_report(const std::string& suite, const std::vector<CheckResult>& checks);

// tuned construction used by several suites: auto bump amplitude and rescale
// to area 4 pi m inside the unit ball
struct TunedSurface {
    GenusSurfaceSpec spec;
    SurfaceAssembly assembly;
};
TunedSurface tuned_surface(int m, int g, double delta, double R = 4.0, double theta_eta = 0.1,
                           double tol = 1e-6);

}  // namespace hforge
