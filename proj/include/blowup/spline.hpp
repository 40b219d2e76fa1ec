#pragma once

#include <array>
#include <vector>

#include "blowup/field.hpp"

namespace blowup {

// Tensor-product cubic B-spline interpolant of a gridded field (C^2, passes
// through the cell-centre samples). Periodic axes wrap; on other axes the end
// coefficients equal the end samples (zero curvature) and queries outside the
// sampled range are clamped to it.
class CubicSpline {
public:
    explicit CubicSpline(const Field& f);

    int components() const { return ncomp_; }
    int dim() const { return grid_.dim; }

    // value[c] and grad[c*dim + a] = d_a f_c at x.
    void evaluate(const std::array<double, 3>& x, double* value, double* grad) const;

private:
    Grid grid_;
    int ncomp_ = 0;
    std::array<int, 3> pn_{1, 1, 1};  // padded extents (n + 4 on active axes)
    std::vector<double> coef_;         // ncomp blocks of padded coefficients

    std::size_t padded_index(int i, int j, int k) const;
};

}  // namespace blowup
