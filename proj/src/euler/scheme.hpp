#pragma once

// Internal kernels of the finite-volume scheme. Conservative data are packed
// structure-of-arrays: U[c*N + i] with c = 0 density, c = 1..d momentum.

#include <array>
#include <vector>

#include "blowup/euler.hpp"

namespace blowup::detail {

struct PointState {
    double rho = 0.0;
    std::array<double, 3> m{};
    std::array<double, 3> u{};
    double p = 0.0;
    double c = 0.0;
    double eta = 0.0;  // 1/2 rho |u|^2 + rho^gamma / (gamma - 1)
};

PointState make_point(double rho, const double* m, int d, double gamma);
PointState make_point_primitive(double rho, const double* u, int d, double gamma);

// Rusanov flux F (d+1 entries) and matching entropy flux Q across a face
// normal to `axis`.
void rusanov(const PointState& L, const PointState& R, int axis, int d, double* F, double& Q);

// Evaluates dU = -div F and, optionally, dQ = div Q by sweeping grid lines.
class Sweeper {
public:
    Sweeper(const Grid& g, double gamma, Reconstruction rec);
    void operator()(const std::vector<double>& U, std::vector<double>& dU, std::vector<double>* dQ);

private:
    Grid g_;
    double gamma_;
    Reconstruction rec_;
    std::array<std::vector<std::size_t>, 3> line_starts_;
    std::vector<PointState> cells_;
};

std::vector<double> pack(const FluidState& s);
FluidState unpack(const std::vector<double>& U, const Grid& g, double gamma);

// Densities in [-floor, floor) become vacuum (rho = m = 0); returns whether
// any cell changed. Anything more negative, or non-finite, aborts.
bool apply_vacuum_floor(std::vector<double>& U, const Grid& g, double t);

std::vector<double> cell_entropy(const std::vector<double>& U, const Grid& g, double gamma);

}  // namespace blowup::detail
