#pragma once

#include <array>
#include <span>
#include <vector>

#include "blowup/field.hpp"

namespace blowup {

enum class DiffMethod { central, spectral };

// First derivative along one axis. Central differences are second order, with
// one-sided second-order stencils at non-periodic edges.
std::vector<double> partial(std::span<const double> f, const Grid& g, int axis, DiffMethod method);

// Scalar -> vector, vector -> tensor with component (i,j) = d_j u_i.
// Spectral differentiation requires a fully periodic grid.
Field gradient(const Field& f, DiffMethod method);
// Spectral on fully periodic grids, central otherwise.
DiffMethod default_method(const Grid& g);
Field velocity_gradient(const Field& u);

// One mixed partial d^alpha f with its multiplicity |alpha|!/alpha! in |grad^k f|^2.
struct MultiPartial {
    std::array<int, 3> alpha{};
    double multiplicity = 1.0;
    std::vector<double> values;
};

// All distinct partials of total order k, evaluated spectrally on the
// trigonometric interpolant (the periodic extension for non-periodic boxes).
std::vector<MultiPartial> spectral_partials(std::span<const double> f, const Grid& g, int order);

// Pointwise |grad^k f|^2 summed over components.
std::vector<double> derivative_norm_sq(const Field& f, int order);

// ||grad^k f||_{L^2} and (sum_{k<=m} ||grad^k f||^2)^{1/2}, both via Parseval.
// On non-periodic grids these assume the field vanishes near the boundary and
// log a warning when it does not.
double seminorm(const Field& f, int order);
double sobolev_norm(const Field& f, int m);
// ||grad^order f||_{H^m} = (sum_{k=order}^{order+m} ||grad^k f||^2)^{1/2}.
double derivative_sobolev_norm(const Field& f, int order, int m);

double linf_norm(const Field& f);
double l2_norm(const Field& f);

// Midpoint quadrature: sum(f) * cell volume.
double integrate(std::span<const double> f, const Grid& g);

// True if any component exceeds `tol` within `margin` cells of a non-periodic edge.
bool touches_boundary(const Field& f, int margin = 2, double tol = 1e-10);

}  // namespace blowup
