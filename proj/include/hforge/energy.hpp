#pragma once
#include <iosfwd>
#include <string>

#include "hforge/quadrature.hpp"
#include "hforge/surface.hpp"

namespace hforge {

struct HelfrichParams {
    double chi_H = 0.25;  // must be positive for lower bounds
    double chi_K = 0.0;
    double H0 = 0.0;      // spontaneous curvature (constant)
};

struct EnergyReport {
    double area = 0;
    double willmore = 0;     // (1/4) integral of H^2
    double helfrich = 0;     // chi_H * integral (H-H0)^2 + chi_K * integral K
    double total_gauss = 0;  // integral of K
    double total_sff = 0;    // integral of |A|^2 = H^2 - 2K
    double err_area = 0, err_willmore = 0, err_helfrich = 0, err_gauss = 0, err_sff = 0;
    int multiplicity_applied = 1;

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

// All functionals in one quadrature sweep; multiplicity scales every total.
EnergyReport evaluate_energy(const SurfaceAssembly& assembly, const QuadOptions& opt,
                             const HelfrichParams& params = {});

double helfrich_energy(const SurfaceAssembly& assembly, const HelfrichParams& params,
                       const QuadOptions& opt);

// round(1 - totalK / 4pi); throws NonIntegerGenus when the residual from the
// nearest integer exceeds 0.1 (a broken gluing).
int genus_from_gauss(const SurfaceAssembly& assembly, const QuadOptions& opt);

}  // namespace hforge
