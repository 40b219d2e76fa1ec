#pragma once

#include <string>

#include "blowup/field.hpp"

namespace blowup {

// Radial smoothstep: 1 on |z| <= inner, 0 on |z| >= outer, C-infinity between.
struct BumpProfile {
    double inner = 1.0;
    double outer = 2.0;
};

double smooth_bump(const BumpProfile& p, double z);

// Worked examples on a 2D grid.
Field example1(const Grid& g, double R, int n);
Field example3_radial(const Grid& g, double R);

struct Example2Data {
    FluidState state;
    double support_radius = 0.0;  // lambda: velocity vanishes beyond it
};
Example2Data example2(const Grid& g, double R, double lambda, double rho_bar, int n, double gamma);

// Gaussian density companion a0 * exp(-|x|^2 / w0^2) used with Examples 1 and 3.
Field gaussian_density(const Grid& g, double amplitude, double width);

// Test-corpus families. Unused parameters are ignored by each kind.
struct FamilyParams {
    std::string kind = "constant";  // constant | compressive_1d | expansive_linear | sideris_pulse
    double gamma = 2.0;
    double rho_bar = 1.0;        // background density (constant, sideris_pulse)
    double lambda0 = 1.0;        // compressive slope
    BumpProfile plateau{2.0, 6.0};  // velocity plateau / cutoff
    double rho_amplitude = 1e-4;    // compressive: constant density; expansive: bump height; sideris: excess
    double rho_width = 1.0;         // expansive / sideris: density bump radius
    double support_radius = 2.0;    // sideris_pulse: R of the support condition
    double margin = 1.5;            // sideris_pulse: target lhs / rhs
};

struct InitialData {
    FluidState state;
    double rho_bar = 0.0;         // background state outside the support
    double support_radius = 0.0;  // radius of the perturbation (0 when not compact)
};

InitialData standard_family(const Grid& g, const FamilyParams& p);

}  // namespace blowup
