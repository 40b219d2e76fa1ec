#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blowup/grid.hpp"

namespace blowup {

enum class FieldKind { scalar, vector, tensor };

// Gridded function with structure-of-arrays storage: component c occupies
// values[c*N, (c+1)*N). Tensor component (i,j) = c = i*dim + j and, for a
// gradient, holds d_j u_i.
class Field {
public:
    Field() = default;
    Field(const Grid& g, FieldKind kind);

    static Field scalar(const Grid& g) { return Field(g, FieldKind::scalar); }
    static Field vector(const Grid& g) { return Field(g, FieldKind::vector); }
    static Field tensor(const Grid& g) { return Field(g, FieldKind::tensor); }

    const Grid& grid() const { return grid_; }
    FieldKind kind() const { return kind_; }
    int components() const { return ncomp_; }
    std::size_t cells() const { return cells_; }

    std::span<double> comp(int c) { return {values_.data() + c * cells_, cells_}; }
    std::span<const double> comp(int c) const { return {values_.data() + c * cells_, cells_}; }

    double& operator()(int c, std::size_t idx) { return values_[c * cells_ + idx]; }
    double operator()(int c, std::size_t idx) const { return values_[c * cells_ + idx]; }
    double& operator[](std::size_t idx) { return values_[idx]; }
    double operator[](std::size_t idx) const { return values_[idx]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    void fill(double v);
    bool all_finite() const;

private:
    Grid grid_{};
    FieldKind kind_ = FieldKind::scalar;
    int ncomp_ = 0;
    std::size_t cells_ = 0;
    std::vector<double> values_;
};

int component_count(FieldKind kind, int dim);

struct FluidState {
    Field rho;
    Field u;
    double gamma = 2.0;

    void validate() const;  // rho >= 0, finite, gamma > 1
};

struct SymmetrizedState {
    Field pi;
    Field u;
    double gamma = 2.0;
    double c1 = 0.5;  // (gamma - 1) / 2
};

}  // namespace blowup
