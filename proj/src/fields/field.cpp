#include "blowup/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blowup {

int component_count(FieldKind kind, int dim) {
    switch (kind) {
        case FieldKind::scalar: return 1;
        case FieldKind::vector: return dim;
        case FieldKind::tensor: return dim * dim;
    }
    return 1;
}

Field::Field(const Grid& g, FieldKind kind)
    : grid_(g), kind_(kind), ncomp_(component_count(kind, g.dim)), cells_(g.size()),
      values_(static_cast<std::size_t>(ncomp_) * cells_, 0.0) {
    g.validate();
}

void Field::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void FluidState::validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (rho.kind() != FieldKind::scalar || u.kind() != FieldKind::vector)
        throw std::invalid_argument("state needs a scalar density and a vector velocity");
    if (!rho.grid().same_shape(u.grid()))
        throw std::invalid_argument("density and velocity live on different grids");
    if (!rho.all_finite() || !u.all_finite())
        throw std::invalid_argument("state contains non-finite values");
    for (double r : rho.values())
        if (r < 0.0) throw std::invalid_argument("negative density in state");
}

}  // namespace blowup
