#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/field.hpp"

namespace blowup {

enum class Reconstruction { none, muscl };

struct SolverConfig {
    double cfl = 0.45;
    double t_end = 1.0;
    std::string flux = "rusanov";
    std::string time_integrator = "ssp_rk2";
    Reconstruction reconstruction = Reconstruction::none;
    // Stop when max|grad u| reaches this; 0 selects 1e3 x max|grad u0|.
    double gradient_blowup_threshold = 0.0;
    int snapshot_stride = 10;
    std::size_t max_steps = 10'000'000;
    // Cells with rho at or below this are left out of velocity-gradient
    // diagnostics (their velocity is not transported by the scheme).
    double diagnostic_density_floor = 0.0;

    void validate() const;  // throws std::invalid_argument
};

// Raised when a step cannot be accepted: negative density, non-finite data.
class SimulationAbort : public std::runtime_error {
public:
    SimulationAbort(const std::string& what, double t) : std::runtime_error(what), t(t) {}
    double t;
};

class CflViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StepDiagnostics {
    double t = 0.0;
    double dt = 0.0;
    double max_grad_u = 0.0;       // max |d_j u_i| over resolved cells
    double max_compression = 0.0;  // max of -lambda_min(sym grad u), clipped at 0
    double mass = 0.0;
    std::array<double, 3> momentum{};
    double total_entropy = 0.0;    // int (1/2 rho |u|^2 + P(rho))
    double kinetic = 0.0;          // int rho |u|^2
    double F = 0.0;                // int x . rho u
    double entropy_production_max = 0.0;
    double max_wave_speed = 0.0;
    bool vacuum_clamped = false;
};

struct Trajectory {
    std::vector<double> times;            // snapshot times, strictly increasing
    std::vector<std::size_t> steps;       // step index of each snapshot
    std::vector<FluidState> states;
    std::vector<StepDiagnostics> series;  // entry 0 is the initial state, then one per step
    double threshold = 0.0;               // gradient blow-up threshold actually used
    std::optional<double> t_detect;
    std::string stop_reason;              // t_end | threshold | max_steps | abort
    std::string abort_message;
    int stencil_radius = 1;               // cells per stage: 1 first order, 2 MUSCL
    int stages = 2;
};

// max over cells of |u| + sqrt(gamma) rho^{(gamma-1)/2}.
double max_wave_speed(const FluidState& state);

// Largest stable step: cfl / sum_a (max_i(|u_a| + c) / h_a).
double stable_dt(const FluidState& state, double cfl);

// One SSP-RK2 step with Rusanov fluxes. Periodic axes wrap; other axes use
// zero-gradient (outflow) ghost cells. Rejects dt above the stable limit.
FluidState step(const FluidState& state, double dt, const SolverConfig& cfg);

struct StepResult {
    FluidState state;
    Field entropy_production;  // per-cell residual, <= 0 for an admissible step
    bool vacuum_clamped = false;
};
StepResult step_with_entropy(const FluidState& state, double dt, const SolverConfig& cfg);

// Same residual evaluated from the two stage states of one accepted step.
// Exposed for diagnostics on states produced elsewhere.
Field entropy_production(const FluidState& before, const FluidState& after, double dt, const SolverConfig& cfg);

StepDiagnostics measure(const FluidState& state, const SolverConfig& cfg);

// Advances to t_end or until max|grad u| crosses the threshold. On
// SimulationAbort the partially filled trajectory is left in `out` and the
// exception is rethrown with the failing time attached.
Trajectory run(const FluidState& state0, const SolverConfig& cfg);
void run(const FluidState& state0, const SolverConfig& cfg, Trajectory& out);

struct BlowupFit {
    std::optional<double> t_detect;  // first threshold crossing
    std::optional<double> fit_t;     // pole of the line fitted to 1/nu
    std::size_t fit_points = 0;
};

// fit_t comes from a least-squares line 1/nu = a - b t over the last decade
// of growth of nu. Without at least a factor-2 rise there is no fit.
BlowupFit detect_blowup(const std::vector<double>& times, const std::vector<double>& values, double threshold);
BlowupFit detect_blowup(const Trajectory& traj);

// Entropy density and pressure helpers.
double pressure(double rho, double gamma);
double internal_energy(double rho, double gamma);  // P = rho^gamma / (gamma - 1)

}  // namespace blowup
