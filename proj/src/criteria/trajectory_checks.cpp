#include <algorithm>
#include <cmath>

#include "blowup/criteria.hpp"
#include "blowup/symmetrize.hpp"

namespace blowup {

namespace {

double radius(const std::array<double, 3>& x, int d) {
    double r = 0.0;
    for (int a = 0; a < d; ++a) r += x[a] * x[a];
    return std::sqrt(r);
}

double max_spacing(const Grid& g) {
    double h = 0.0;
    for (int a = 0; a < g.dim; ++a) h = std::max(h, g.h[a]);
    return h;
}

}  // namespace

SiderisSeries sideris_functionals(const Trajectory& traj, double rho_bar, double rate_tol, double mass_tol) {
    if (traj.states.empty() || traj.series.empty()) throw std::invalid_argument("empty trajectory");
    SiderisSeries out;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const FluidState& s = traj.states[k];
        const Grid& g = s.rho.grid();
        double F = 0.0, M = 0.0, kin = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto x = g.center(i);
            double xm = 0.0, u2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                xm += x[a] * s.rho[i] * s.u(a, i);
                u2 += s.u(a, i) * s.u(a, i);
            }
            F += xm;
            M += s.rho[i] - rho_bar;
            kin += s.rho[i] * u2;
        }
        const double vol = g.cell_volume();
        out.times.push_back(traj.times[k]);
        out.F.push_back(F * vol);
        out.M.push_back(M * vol);
        out.kinetic.push_back(kin * vol);
        // the moment integral only sees what the box holds
        Field dev = Field::scalar(g);
        for (std::size_t i = 0; i < g.size(); ++i) dev[i] = std::abs(s.rho[i] - rho_bar);
        if (touches_boundary(dev) || touches_boundary(s.u)) out.boundary_touched = true;
    }

    // G(t) = F(t) - int_0^t int rho|u|^2 along the per-step series; the
    // inequality between snapshot pairs says G never drops by more than tol.
    const auto& ser = traj.series;
    std::vector<double> cum(ser.size(), 0.0);
    for (std::size_t n = 1; n < ser.size(); ++n)
        cum[n] = cum[n - 1] + 0.5 * (ser[n].kinetic + ser[n - 1].kinetic) * (ser[n].t - ser[n - 1].t);
    double best_G = -INFINITY;
    out.worst_rate_deficit = -INFINITY;
    for (std::size_t step : traj.steps) {
        const double G = ser[step].F - cum[step];
        if (best_G > -INFINITY) out.worst_rate_deficit = std::max(out.worst_rate_deficit, best_G - G);
        best_G = std::max(best_G, G);
    }
    if (traj.steps.size() < 2) out.worst_rate_deficit = 0.0;

    const double m0 = ser.front().mass;
    for (const auto& d : ser) out.mass_drift = std::max(out.mass_drift, std::abs(d.mass - m0));
    out.mass_drift /= m0 > 0.0 ? m0 : 1.0;

    out.F_rate_ok = !out.boundary_touched && out.worst_rate_deficit <= rate_tol;
    out.M_const_ok = out.mass_drift <= mass_tol;
    return out;
}

ConeSeries cone_check(const Trajectory& traj, double rho_bar, double R) {
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    ConeSeries out;
    const double gamma = traj.states.front().gamma;
    out.sigma = background_sound_speed(rho_bar, gamma);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const FluidState& s = traj.states[k];
        const Grid& g = s.rho.grid();
        const double t = traj.times[k];
        const double pad = static_cast<double>(traj.stencil_radius * traj.stages) *
                           static_cast<double>(traj.steps[k]) * max_spacing(g);
        const double tight = R + out.sigma * t;
        double dev = 0.0, dev_tight = 0.0;
        std::size_t tested = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double r = radius(g.center(i), g.dim);
            if (r <= tight) continue;
            double u2 = 0.0;
            for (int a = 0; a < g.dim; ++a) u2 += s.u(a, i) * s.u(a, i);
            const double e = std::abs(s.rho[i] - rho_bar) + std::sqrt(u2);
            dev_tight = std::max(dev_tight, e);
            if (r > tight + pad) {
                dev = std::max(dev, e);
                ++tested;
            }
        }
        out.times.push_back(t);
        out.radius.push_back(tight + pad);
        out.pad.push_back(pad);
        out.deviation.push_back(dev);
        out.cells_tested.push_back(tested);
        out.tight_deviation.push_back(dev_tight);
        out.max_deviation = std::max(out.max_deviation, dev);
    }
    return out;
}

double decay_b(double gamma, int d) {
    const double dd = d;
    return gamma >= 1.0 + 2.0 / dd ? 1.0 - dd / 2.0 : (gamma - 1.0) * dd / 2.0 - dd / 2.0;
}

double decay_a(double s, int d) { return 1.0 + s + d / 2.0; }

WeightedEnergy weighted_energy(const Trajectory& traj, const CharacteristicMap& burgers_reference, int m, double s,
                               double density_floor) {
    if (traj.t_detect || traj.stop_reason == "threshold")
        throw std::invalid_argument("weighted_energy needs a trajectory without detected blow-up");
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    const FluidState& s0 = traj.states.front();
    const int d = s0.rho.grid().dim;
    WeightedEnergy out;
    out.a = decay_a(s, d);
    out.b = decay_b(s0.gamma, d);
    for (int k = 0; k <= m; ++k) out.delta.push_back(k + out.b - out.a);
    const double c1 = symmetrizer_coefficient(s0.gamma);

    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const FluidState& st = traj.states[n];
        const Grid& g = st.rho.grid();
        const double t = traj.times[n];
        const Field v = burgers_velocity(burgers_reference, g, t);
        Field pi = Field::scalar(g);
        Field w = Field::vector(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double r = st.rho[i];
            pi[i] = r < kVacuumFloor ? 0.0 : c1 * std::pow(r, 0.5 * (st.gamma - 1.0));
            if (r <= density_floor) continue;
            for (int a = 0; a < d; ++a) w(a, i) = st.u(a, i) - v(a, i);
        }
        std::vector<double> gk;
        double Gamma = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double sp = seminorm(pi, k), sw = seminorm(w, k);
            gk.push_back(std::sqrt(sp * sp + sw * sw));
            Gamma += std::pow(1.0 + t, out.delta[k]) * gk.back();
        }
        out.times.push_back(t);
        out.gamma_k.push_back(std::move(gk));
        out.Gamma.push_back(Gamma);
        out.scaled.push_back(Gamma * std::pow(1.0 + t, out.a));
    }

    // least-squares slope of log(scaled) against log(1 + t)
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t n = 0; n < out.times.size(); ++n) {
        if (!(out.scaled[n] > 0.0)) continue;
        const double x = std::log1p(out.times[n]), y = std::log(out.scaled[n]);
        sx += x, sy += y, sxx += x * x, sxy += x * y, cnt += 1;
    }
    const double den = cnt * sxx - sx * sx;
    if (cnt >= 2 && den > 0.0) out.slope = (cnt * sxy - sx * sy) / den;
    return out;
}

}  // namespace blowup
