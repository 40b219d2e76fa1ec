#include "blowup/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "blowup/calculus.hpp"
#include "blowup/small_matrix.hpp"
#include "scheme.hpp"

namespace blowup {

using detail::pack;
using detail::unpack;

void SolverConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite and >= 0");
    if (flux != "rusanov") throw std::invalid_argument("unsupported flux: " + flux);
    if (time_integrator != "ssp_rk2") throw std::invalid_argument("unsupported time integrator: " + time_integrator);
    if (gradient_blowup_threshold < 0.0 || !std::isfinite(gradient_blowup_threshold))
        throw std::invalid_argument("gradient_blowup_threshold must be > 0 (or 0 for the default)");
    if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (diagnostic_density_floor < 0.0) throw std::invalid_argument("diagnostic_density_floor must be >= 0");
}

double pressure(double rho, double gamma) { return rho > 0.0 ? std::pow(rho, gamma) : 0.0; }

double internal_energy(double rho, double gamma) { return pressure(rho, gamma) / (gamma - 1.0); }

namespace {

std::array<double, 3> axis_speeds(const FluidState& s) {
    const Grid& g = s.rho.grid();
    std::array<double, 3> a{};
    for (std::size_t i = 0; i < s.rho.cells(); ++i) {
        const double r = s.rho[i];
        const double c = r > 0.0 ? std::sqrt(s.gamma) * std::pow(r, 0.5 * (s.gamma - 1.0)) : 0.0;
        for (int k = 0; k < g.dim; ++k) a[k] = std::max(a[k], std::abs(s.u(k, i)) + c);
    }
    return a;
}

double speed_sum(const FluidState& s) {
    const auto a = axis_speeds(s);
    const Grid& g = s.rho.grid();
    double sum = 0.0;
    for (int k = 0; k < g.dim; ++k) sum += a[k] / g.h[k];
    return sum;
}

struct RawStep {
    std::vector<double> U0, U2, dQ0, dQ1;
    bool clamped = false;
};

RawStep raw_step(const FluidState& state, double dt, const SolverConfig& cfg, double t) {
    const Grid& g = state.rho.grid();
    const std::size_t N = g.size();
    const int nc = g.dim + 1;
    detail::Sweeper sweep(g, state.gamma, cfg.reconstruction);
    RawStep r;
    r.U0 = pack(state);
    std::vector<double> L;
    sweep(r.U0, L, &r.dQ0);
    std::vector<double> U1(nc * N);
    for (std::size_t i = 0; i < U1.size(); ++i) U1[i] = r.U0[i] + dt * L[i];
    r.clamped = detail::apply_vacuum_floor(U1, g, t + dt);
    sweep(U1, L, &r.dQ1);
    r.U2.resize(nc * N);
    for (std::size_t i = 0; i < U1.size(); ++i) r.U2[i] = 0.5 * r.U0[i] + 0.5 * (U1[i] + dt * L[i]);
    r.clamped = detail::apply_vacuum_floor(r.U2, g, t + dt) || r.clamped;
    return r;
}

Field residual(const RawStep& r, const Grid& g, double gamma, double dt) {
    const auto e0 = detail::cell_entropy(r.U0, g, gamma);
    const auto e2 = detail::cell_entropy(r.U2, g, gamma);
    Field out = Field::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = (e2[i] - e0[i]) / dt + 0.5 * (r.dQ0[i] + r.dQ1[i]);
    return out;
}

void check_dt(const FluidState& state, double dt, const SolverConfig& cfg) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw CflViolation("time step must be positive and finite");
    const double lim = stable_dt(state, cfg.cfl);
    if (dt > lim * (1.0 + 1e-12))
        throw CflViolation("time step " + std::to_string(dt) + " exceeds the stable limit " + std::to_string(lim));
}

}  // namespace

double max_wave_speed(const FluidState& state) {
    double best = 0.0;
    const int d = state.rho.grid().dim;
    for (std::size_t i = 0; i < state.rho.cells(); ++i) {
        const double r = state.rho[i];
        double u2 = 0.0;
        for (int k = 0; k < d; ++k) u2 += state.u(k, i) * state.u(k, i);
        const double c = r > 0.0 ? std::sqrt(state.gamma) * std::pow(r, 0.5 * (state.gamma - 1.0)) : 0.0;
        best = std::max(best, std::sqrt(u2) + c);
    }
    return best;
}

double stable_dt(const FluidState& state, double cfl) {
    const double s = speed_sum(state);
    return s > 0.0 ? cfl / s : std::numeric_limits<double>::infinity();
}

StepResult step_with_entropy(const FluidState& state, double dt, const SolverConfig& cfg) {
    cfg.validate();
    state.validate();
    check_dt(state, dt, cfg);
    const Grid& g = state.rho.grid();
    RawStep r = raw_step(state, dt, cfg, 0.0);
    return {unpack(r.U2, g, state.gamma), residual(r, g, state.gamma, dt), r.clamped};
}

FluidState step(const FluidState& state, double dt, const SolverConfig& cfg) {
    return step_with_entropy(state, dt, cfg).state;
}

Field entropy_production(const FluidState& before, const FluidState& after, double dt, const SolverConfig& cfg) {
    const Grid& g = before.rho.grid();
    if (!g.same_shape(after.rho.grid())) throw std::invalid_argument("states live on different grids");
    // Recompute the intermediate stage; the final state is taken as given.
    RawStep r = raw_step(before, dt, cfg, 0.0);
    r.U2 = pack(after);
    return residual(r, g, before.gamma, dt);
}

StepDiagnostics measure(const FluidState& state, const SolverConfig& cfg) {
    const Grid& g = state.rho.grid();
    const int d = g.dim;
    const std::size_t N = g.size();
    const double vol = g.cell_volume();
    StepDiagnostics s;
    const Field grad = gradient(state.u, DiffMethod::central);
    for (std::size_t i = 0; i < N; ++i) {
        const double r = state.rho[i];
        double u2 = 0.0, xm = 0.0;
        const auto x = g.center(i);
        for (int k = 0; k < d; ++k) {
            const double u = state.u(k, i);
            u2 += u * u;
            s.momentum[k] += r * u * vol;
            xm += x[k] * r * u;
        }
        s.mass += r * vol;
        s.kinetic += r * u2 * vol;
        s.F += xm * vol;
        s.total_entropy += (0.5 * r * u2 + internal_energy(r, state.gamma)) * vol;
        if (r <= cfg.diagnostic_density_floor) continue;
        Mat A = Mat::zero(d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                A(a, b) = grad(a * d + b, i);
                s.max_grad_u = std::max(s.max_grad_u, std::abs(A(a, b)));
            }
        const double lmin = d == 1 ? A(0, 0) : sym_eigen(sym_part(A)).values[0];
        s.max_compression = std::max(s.max_compression, -lmin);
    }
    s.max_wave_speed = max_wave_speed(state);
    return s;
}

void run(const FluidState& state0, const SolverConfig& cfg, Trajectory& out) {
    cfg.validate();
    state0.validate();
    const Grid& g = state0.rho.grid();
    out = Trajectory{};
    out.stencil_radius = cfg.reconstruction == Reconstruction::muscl ? 2 : 1;
    out.stages = 2;

    StepDiagnostics d0 = measure(state0, cfg);
    out.threshold = cfg.gradient_blowup_threshold > 0.0 ? cfg.gradient_blowup_threshold : 1e3 * d0.max_grad_u;
    if (out.threshold <= 0.0) out.threshold = std::numeric_limits<double>::infinity();
    out.series.push_back(d0);
    out.times.push_back(0.0);
    out.steps.push_back(0);
    out.states.push_back(state0);

    FluidState cur = state0;
    double t = 0.0;
    std::size_t n = 0;
    out.stop_reason = "t_end";
    while (t < cfg.t_end) {
        if (n >= cfg.max_steps) {
            out.stop_reason = "max_steps";
            break;
        }
        double dt = std::min(stable_dt(cur, cfg.cfl), cfg.t_end - t);
        // avoid a sliver final step
        if (t + dt < cfg.t_end && cfg.t_end - (t + dt) < 1e-9 * cfg.t_end) dt = cfg.t_end - t;
        RawStep r;
        try {
            r = raw_step(cur, dt, cfg, t);
        } catch (const SimulationAbort& e) {
            out.stop_reason = "abort";
            out.abort_message = e.what();
            spdlog::warn("run aborted at t = {}: {}", e.t, e.what());
            throw;
        }
        const Field res = residual(r, g, cur.gamma, dt);
        cur = unpack(r.U2, g, cur.gamma);
        t = (cfg.t_end - (t + dt) <= 0.0) ? cfg.t_end : t + dt;
        ++n;

        StepDiagnostics s = measure(cur, cfg);
        s.t = t;
        s.dt = dt;
        s.vacuum_clamped = r.clamped;
        s.entropy_production_max = *std::max_element(res.values().begin(), res.values().end());
        out.series.push_back(s);

        const bool crossed = s.max_grad_u >= out.threshold;
        const bool last = crossed || t >= cfg.t_end;
        if (n % static_cast<std::size_t>(cfg.snapshot_stride) == 0 || last) {
            out.times.push_back(t);
            out.steps.push_back(n);
            out.states.push_back(cur);
        }
        if (crossed) {
            out.t_detect = t;
            out.stop_reason = "threshold";
            break;
        }
    }
}

Trajectory run(const FluidState& state0, const SolverConfig& cfg) {
    Trajectory out;
    run(state0, cfg, out);
    return out;
}

BlowupFit detect_blowup(const std::vector<double>& times, const std::vector<double>& values, double threshold) {
    if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
    BlowupFit fit;
    if (values.empty()) return fit;
    std::size_t end = values.size() - 1;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= threshold) {
            fit.t_detect = times[i];
            end = i;
            break;
        }
    if (!fit.t_detect) end = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    const double top = values[end];
    if (!(top > 0.0)) return fit;
    // Start of the last decade: just after the final sample below top/10.
    std::size_t begin = 0;
    for (std::size_t i = end + 1; i-- > 0;)
        if (values[i] < 0.1 * top) {
            begin = i + 1;
            break;
        }
    const double low = *std::min_element(values.begin() + begin, values.begin() + end + 1);
    if (!(low > 0.0) || top < 2.0 * low || end < begin + 2) return fit;

    double st = 0, sy = 0, stt = 0, sty = 0;
    const double m = static_cast<double>(end - begin + 1);
    for (std::size_t i = begin; i <= end; ++i) {
        const double y = 1.0 / values[i];
        st += times[i];
        sy += y;
        stt += times[i] * times[i];
        sty += times[i] * y;
    }
    const double den = m * stt - st * st;
    if (den <= 0.0) return fit;
    const double slope = (m * sty - st * sy) / den;  // = -b
    const double icpt = (sy - slope * st) / m;
    if (!(slope < 0.0)) return fit;
    fit.fit_t = -icpt / slope;
    fit.fit_points = end - begin + 1;
    return fit;
}

BlowupFit detect_blowup(const Trajectory& traj) {
    std::vector<double> t, v;
    for (const auto& s : traj.series) {
        t.push_back(s.t);
        v.push_back(s.max_grad_u);
    }
    return detect_blowup(t, v, traj.threshold);
}

}  // namespace blowup
