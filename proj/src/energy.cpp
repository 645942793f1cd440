#include "hforge/energy.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hforge/errors.hpp"

namespace hforge {

namespace {

// components: 1, H^2, K, (H - H0)^2
IntegrandSpec energy_integrand(double H0) {
    IntegrandSpec spec;
    spec.ncomp = 4;
    spec.needs_curvature = true;
    spec.eval = [H0](const QuadPoint& q, double* out) {
        out[0] = 1.0;
        out[1] = q.H * q.H;
        out[2] = q.K;
        out[3] = (q.H - H0) * (q.H - H0);
    };
    return spec;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

EnergyReport evaluate_energy(const SurfaceAssembly& assembly, const QuadOptions& opt,
                             const HelfrichParams& params) {
    QuadResult r = integrate_assembly(assembly, energy_integrand(params.H0), opt);
    EnergyReport rep;
    rep.multiplicity_applied = assembly.multiplicity;
    rep.area = r.values[0];
    rep.willmore = 0.25 * r.values[1];
    rep.total_gauss = r.values[2];
    rep.total_sff = r.values[1] - 2 * r.values[2];
    rep.helfrich = params.chi_H * r.values[3] + params.chi_K * r.values[2];
    rep.err_area = r.errors[0];
    rep.err_willmore = 0.25 * r.errors[1];
    rep.err_gauss = r.errors[2];
    rep.err_sff = r.errors[1] + 2 * r.errors[2];
    rep.err_helfrich = std::fabs(params.chi_H) * r.errors[3] + std::fabs(params.chi_K) * r.errors[2];
    return rep;
}

double helfrich_energy(const SurfaceAssembly& assembly, const HelfrichParams& params,
                       const QuadOptions& opt) {
    return evaluate_energy(assembly, opt, params).helfrich;
}

int genus_from_gauss(const SurfaceAssembly& assembly, const QuadOptions& opt) {
    const EnergyReport rep = evaluate_energy(assembly, opt);
    // the genus of the underlying manifold: the constant density theta scales
    // the varifold Gauss mass but not the topology
    const double per_sheet = rep.total_gauss / std::max(1, assembly.multiplicity);
    const double g_real = 1.0 - per_sheet / (4 * M_PI);
    const double g_round = std::round(g_real);
    if (std::fabs(g_real - g_round) > 0.1) {
        std::ostringstream os;
        os << "total Gauss curvature " << rep.total_gauss << " gives non-integer genus "
           << g_real;
        throw NonIntegerGenus(os.str());
    }
    return static_cast<int>(g_round);
}

std::string EnergyReport::to_json() const {
    std::ostringstream os;
    os << "{\"area\":" << fmt(area) << ",\"willmore\":" << fmt(willmore)
       << ",\"helfrich\":" << fmt(helfrich) << ",\"total_gauss\":" << fmt(total_gauss)
       << ",\"total_sff\":" << fmt(total_sff) << ",\"err_area\":" << fmt(err_area)
       << ",\"err_willmore\":" << fmt(err_willmore) << ",\"err_helfrich\":" << fmt(err_helfrich)
       << ",\"err_gauss\":" << fmt(err_gauss) << ",\"err_sff\":" << fmt(err_sff)
       << ",\"multiplicity_applied\":" << multiplicity_applied << "}";
    return os.str();
}

std::string EnergyReport::csv_header() {
    return "area,willmore,helfrich,total_gauss,total_sff,err_area,err_willmore,"
           "err_helfrich,err_gauss,err_sff,multiplicity";
}

std::string EnergyReport::to_csv_row() const {
    std::ostringstream os;
    os << fmt(area) << ',' << fmt(willmore) << ',' << fmt(helfrich) << ',' << fmt(total_gauss)
       << ',' << fmt(total_sff) << ',' << fmt(err_area) << ',' << fmt(err_willmore) << ','
       << fmt(err_helfrich) << ',' << fmt(err_gauss) << ',' << fmt(err_sff) << ','
       << multiplicity_applied;
    return os.str();
}

}  // namespace hforge
