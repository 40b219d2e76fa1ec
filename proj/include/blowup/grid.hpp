#pragma once

#include <array>
#include <cstddef>

namespace blowup {

// Uniform cell-centred Cartesian mesh. Axes beyond `dim` are inert (one cell,
// unit spacing). Storage is row-major with the last active axis fastest.
struct Grid {
    int dim = 1;
    std::array<int, 3> n{2, 1, 1};
    std::array<double, 3> h{1.0, 1.0, 1.0};
    std::array<double, 3> origin{0.0, 0.0, 0.0};  // centre of cell (0,0,0)
    std::array<bool, 3> periodic{true, true, true};

    // Cells tile [lo, hi) on each active axis.
    static Grid box(int dim, std::array<int, 3> cells, std::array<double, 3> lo,
                    std::array<double, 3> hi, bool periodic);
    static Grid box1d(int n, double lo, double hi, bool periodic);

    void validate() const;  // throws std::invalid_argument

    std::size_t size() const;
    double cell_volume() const;
    double volume() const;
    double extent(int axis) const { return n[axis] * h[axis]; }
    double lower(int axis) const { return origin[axis] - 0.5 * h[axis]; }
    double upper(int axis) const { return lower(axis) + extent(axis); }
    double coord(int axis, int i) const { return origin[axis] + i * h[axis]; }
    bool all_periodic() const;

    std::size_t stride(int axis) const;
    std::size_t index(int i, int j = 0, int k = 0) const;
    std::array<int, 3> unravel(std::size_t idx) const;
    std::array<double, 3> center(std::size_t idx) const;

    // Index of the neighbour `shift` cells along `axis`, wrapped when periodic
    // and clamped to the edge otherwise.
    std::size_t neighbour(std::size_t idx, int axis, int shift) const;

    bool same_shape(const Grid& o) const;
};

}  // namespace blowup
