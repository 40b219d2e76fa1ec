#pragma once

#include "blowup/field.hpp"

namespace blowup {

// Densities below this are treated as vacuum before fractional powers.
inline constexpr double kVacuumFloor = 1e-14;

// pi = sqrt((gamma-1)/(4 gamma)) * rho^((gamma-1)/2), c1 = (gamma-1)/2.
double symmetrizer_coefficient(double gamma);
SymmetrizedState to_symmetrized(const FluidState& state);
FluidState from_symmetrized(const SymmetrizedState& s);

}  // namespace blowup
