#include "blowup/symmetrize.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

double symmetrizer_coefficient(double gamma) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    return std::sqrt((gamma - 1.0) / (4.0 * gamma));
}

SymmetrizedState to_symmetrized(const FluidState& state) {
    const double k = symmetrizer_coefficient(state.gamma);
    state.validate();
    SymmetrizedState s;
    s.gamma = state.gamma;
    s.c1 = 0.5 * (state.gamma - 1.0);
    s.u = state.u;
    s.pi = Field::scalar(state.rho.grid());
    const double e = 0.5 * (state.gamma - 1.0);
    for (std::size_t i = 0; i < state.rho.cells(); ++i) {
        const double r = state.rho[i] < kVacuumFloor ? 0.0 : state.rho[i];
        s.pi[i] = k * std::pow(r, e);
    }
    return s;
}

FluidState from_symmetrized(const SymmetrizedState& s) {
    const double k = symmetrizer_coefficient(s.gamma);
    FluidState state;
    state.gamma = s.gamma;
    state.u = s.u;
    state.rho = Field::scalar(s.pi.grid());
    const double e = 2.0 / (s.gamma - 1.0);
    for (std::size_t i = 0; i < s.pi.cells(); ++i) {
        if (s.pi[i] < 0.0) throw std::invalid_argument("negative pi in symmetrized state");
        state.rho[i] = std::pow(s.pi[i] / k, e);
    }
    return state;
}

}  // namespace blowup
