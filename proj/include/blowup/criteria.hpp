#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "blowup/burgers.hpp"
#include "blowup/calculus.hpp"
#include "blowup/euler.hpp"
#include "blowup/field.hpp"

namespace blowup {

// Plateau / background comparisons.
inline constexpr double kBackgroundTol = 1e-10;

// Area of the unit sphere in R^d: 2, 2 pi, 4 pi.
double sphere_area(int d);
// sigma = sqrt(gamma) * rho_bar^((gamma-1)/2)
double background_sound_speed(double rho_bar, double gamma);

class SupportViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SiderisResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// lhs = int rho0 u0.x / (omega_d R^{d+1}), rhs = (d+1) sigma ||rho0||_inf.
// Throws SupportViolation when the data differ from (rho_bar, 0) outside B_R.
SiderisResult sideris_condition(const FluidState& s, double rho_bar, double R);

// (rho0, u0) = (rho_bar, 0) outside B_R and int (rho0 - rho_bar) >= 0.
bool support_condition(const FluidState& s, double rho_bar, double R);

struct NdResult {
    bool found = false;
    std::array<double, 3> x0{};
    double lambda_max = 0.0;  // minus the most negative eigenvalue at x0
    std::array<double, 3> xi0{};
    bool symmetric = false;   // grad u0(x0) symmetric to 1e-8 relative
    // Full real spectrum over all cells, symmetric or not.
    double full_lambda_min = 0.0;
    std::array<double, 3> full_x{};
    std::size_t asymmetric_cells = 0;  // cells failing the symmetry test
};

NdResult nd_condition(const Field& u0);

struct HmSmallness {
    double value = 0.0;
    double threshold = 0.0;  // lambda_max^2 / (5 (gamma - 1))
    bool holds = false;
    int m = 0;
};

// value = (||grad^2 rho^{(g-1)/2}||_{H^m} + ||grad^2 u||_{H^m}) ||rho^{(g-1)/2}||_inf.
HmSmallness hm_smallness(const FluidState& s, int m, double lambda_max);
double hm_threshold(double lambda_max, double gamma);

// eps0 = (lambda0 r / 2) [r M / lambda_max + 2 e^{M/lambda_max} / M]^{-1}
double prop23_epsilon(double lambda0, double lambda_max, double r, double M);

// 2 nu0 / (2 - nu0 t), defined for 0 <= t < 2 / nu0.
double riccati_bound(double nu0, double t);

struct RelativeEntropyPair {
    Field eta;
    Field q;
};

// eta = |m|^2/(2 rho) + P(rho) - P'(rho_bar)(rho - rho_bar) - P(rho_bar), P = rho^g/(g-1),
// q = (m / rho) eta. Vacuum cells take the rho -> 0 limit eta = p(rho_bar), q = 0.
RelativeEntropyPair relative_entropy(const FluidState& s, double rho_bar);

struct GrassinHypotheses {
    bool g1 = false;
    bool g2 = false;
    bool g3 = false;
    double alpha = 0.0;
    double min_form = 0.0;          // min over cells of the smallest eigenvalue of sym(grad u0)
    double min_form_on_support = 0.0;
};

GrassinHypotheses grassin_hypotheses(const FluidState& s, int m, double alpha);


// ---- trajectory checks ----

struct SiderisSeries {
    std::vector<double> times;     // snapshot times
    std::vector<double> F;         // int x . rho u
    std::vector<double> M;         // int (rho - rho_bar)
    std::vector<double> kinetic;   // int rho |u|^2 at the snapshot
    // max over snapshot pairs t1 < t2 of [int_{t1}^{t2} int rho|u|^2] - [F(t2) - F(t1)],
    // the time integral taken by the trapezoid rule over every step.
    double worst_rate_deficit = 0.0;
    double mass_drift = 0.0;       // max_t |M(t) - M(0)| / int rho(0), over every step
    bool F_rate_ok = false;
    bool M_const_ok = false;
    bool boundary_touched = false; // F truncated by the box: rate check not meaningful
};
SiderisSeries sideris_functionals(const Trajectory& traj, double rho_bar, double rate_tol = 1e-6,
                                  double mass_tol = 1e-10);

struct ConeSeries {
    double sigma = 0.0;
    std::vector<double> times;
    std::vector<double> radius;         // R + sigma t + pad
    std::vector<double> pad;            // stencil_radius * stages * steps * max h
    std::vector<double> deviation;      // max |rho - rho_bar| + |u| beyond radius
    std::vector<std::size_t> cells_tested;
    std::vector<double> tight_deviation;  // same beyond R + sigma t, no padding
    double max_deviation = 0.0;
};
ConeSeries cone_check(const Trajectory& traj, double rho_bar, double R);

// 1 - d/2 when gamma >= 1 + 2/d, else (gamma - 1) d/2 - d/2.
double decay_b(double gamma, int d);
// a = 1 + s + d/2.
double decay_a(double s, int d);

struct WeightedEnergy {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> delta;                // delta_k = k + b - a, k = 0..m
    std::vector<double> times;
    std::vector<std::vector<double>> gamma_k; // [snapshot][k]: ||grad^k (pi, u - v)||_{L^2}
    std::vector<double> Gamma;                // sum_k (1+t)^{delta_k} Gamma_k
    std::vector<double> scaled;               // Gamma (1+t)^a
    std::optional<double> slope;              // log-log slope of `scaled` vs 1+t
};
// v comes from the Burgers flow of the initial velocity. Velocity differences
// are dropped where rho <= density_floor. Throws std::invalid_argument on a
// trajectory that stopped at the blow-up threshold.
WeightedEnergy weighted_energy(const Trajectory& traj, const CharacteristicMap& burgers_reference, int m,
                               double s = 0.0, double density_floor = 0.0);

}  // namespace blowup
