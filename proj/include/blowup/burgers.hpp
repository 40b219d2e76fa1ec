#pragma once

#include <array>
#include <limits>
#include <stdexcept>
#include <vector>

#include "blowup/calculus.hpp"
#include "blowup/small_matrix.hpp"
#include "blowup/spline.hpp"

namespace blowup {

// I + t grad u0 became singular: characteristics have crossed.
class BlowupReached : public std::runtime_error {
public:
    BlowupReached(const std::string& what, double t_critical)
        : std::runtime_error(what), t_critical(t_critical) {}
    double t_critical;
};

class NewtonFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (I + t A)^{-1} A for A = grad u0(x0): the Burgers gradient at X(t, x0).
Mat burgers_gradient(const Mat& grad_u0, double t);

struct BlowupVerdict {
    bool blows_up = false;
    double t_star = std::numeric_limits<double>::infinity();
    std::array<double, 3> x_star{};
    double lambda = 0.0;  // most negative real eigenvalue of grad u0 (0 if none)
    // Same scan on the symmetric part; differs from `lambda` only for
    // non-symmetric gradients, which are counted.
    double sym_lambda = 0.0;
    std::size_t asymmetric_cells = 0;
};

BlowupVerdict burgers_blowup_time(const Field& u0);
BlowupVerdict burgers_blowup_time(const Field& u0, DiffMethod method);

// Straight characteristics X(t, x0) = x0 + t u0(x0) of the stored initial
// velocity, sampled through a C^2 cubic spline.
class CharacteristicMap {
public:
    explicit CharacteristicMap(const Field& u0);

    int dim() const { return spline_.dim(); }
    std::array<double, 3> u0(const std::array<double, 3>& x) const;
    Mat grad_u0(const std::array<double, 3>& x) const;

    struct Foot {
        std::array<double, 3> x0{};  // foot of the characteristic through (t, x)
        std::array<double, 3> v{};   // v(t, x) = u0(x0)
        int iterations = 0;
        double residual = 0.0;
    };

    // Damped Newton on x0 + t u0(x0) = x seeded at x0 = x: at most 50
    // iterations, step halved while the residual grows, converged when the
    // residual is below 1e-10 (1 + |x|). Throws NewtonFailure otherwise.
    Foot invert(double t, const std::array<double, 3>& x) const;

private:
    CubicSpline spline_;
};

std::array<double, 3> evaluate_burgers(const CharacteristicMap& map, double t, const std::array<double, 3>& x);

// v(t, .) sampled on the grid of u0.
Field burgers_velocity(const CharacteristicMap& map, const Grid& g, double t);

// Cells where the smallest eigenvalue of sym(grad u0) is at least alpha.
std::vector<std::size_t> omega_alpha(const Field& u0, double alpha);

// sup over the images of `region` cells of max_ij |(1+t)^2 (grad v - I/(1+t))|,
// evaluated along characteristics from the cell centres of u0's grid.
double grassin_remainder(const Field& u0, double t, const std::vector<std::size_t>& region);

}  // namespace blowup
