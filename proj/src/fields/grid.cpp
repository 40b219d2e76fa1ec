#include "blowup/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowup {

Grid Grid::box(int dim, std::array<int, 3> cells, std::array<double, 3> lo,
               std::array<double, 3> hi, bool periodic) {
    Grid g;
    g.dim = dim;
    for (int a = 0; a < 3; ++a) {
        if (a < dim) {
            g.n[a] = cells[a];
            g.h[a] = (hi[a] - lo[a]) / cells[a];
            g.origin[a] = lo[a] + 0.5 * g.h[a];
            g.periodic[a] = periodic;
        } else {
            g.n[a] = 1;
            g.h[a] = 1.0;
            g.origin[a] = 0.0;
            g.periodic[a] = true;
        }
    }
    g.validate();
    return g;
}

Grid Grid::box1d(int n, double lo, double hi, bool periodic) {
    return box(1, {n, 1, 1}, {lo, 0, 0}, {hi, 0, 0}, periodic);
}

void Grid::validate() const {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    for (int a = 0; a < dim; ++a) {
        if (n[a] < 2)
            throw std::invalid_argument("grid needs at least 2 cells on axis " + std::to_string(a));
        if (!(h[a] > 0.0) || !std::isfinite(h[a]))
            throw std::invalid_argument("grid spacing must be positive on axis " + std::to_string(a));
        if (!std::isfinite(origin[a])) throw std::invalid_argument("grid origin must be finite");
    }
}

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= h[a];
    return v;
}

double Grid::volume() const { return cell_volume() * static_cast<double>(size()); }

bool Grid::all_periodic() const {
    for (int a = 0; a < dim; ++a)
        if (!periodic[a]) return false;
    return true;
}

std::size_t Grid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = dim - 1; a > axis; --a) s *= static_cast<std::size_t>(n[a]);
    return s;
}

std::size_t Grid::index(int i, int j, int k) const {
    const int ijk[3] = {i, j, k};
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) idx = idx * static_cast<std::size_t>(n[a]) + ijk[a];
    return idx;
}

std::array<int, 3> Grid::unravel(std::size_t idx) const {
    std::array<int, 3> ijk{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        ijk[a] = static_cast<int>(idx % static_cast<std::size_t>(n[a]));
        idx /= static_cast<std::size_t>(n[a]);
    }
    return ijk;
}

std::array<double, 3> Grid::center(std::size_t idx) const {
    const auto ijk = unravel(idx);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) x[a] = coord(a, ijk[a]);
    return x;
}

std::size_t Grid::neighbour(std::size_t idx, int axis, int shift) const {
    const int i = unravel(idx)[axis];
    int j = i + shift;
    if (periodic[axis]) {
        j %= n[axis];
        if (j < 0) j += n[axis];
    } else {
        j = j < 0 ? 0 : (j >= n[axis] ? n[axis] - 1 : j);
    }
    const auto s = static_cast<std::ptrdiff_t>(stride(axis));
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) + (j - i) * s);
}

bool Grid::same_shape(const Grid& o) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a)
        if (n[a] != o.n[a]) return false;
    return true;
}

}  // namespace blowup
