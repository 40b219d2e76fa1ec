#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blowup/euler.hpp"
#include "blowup/grid.hpp"

using namespace blowup;
using doctest::Approx;

namespace {

FluidState uniform(const Grid& g, double rho, std::array<double, 3> u, double gamma) {
    FluidState s{Field::scalar(g), Field::vector(g), gamma};
    s.rho.fill(rho);
    for (int k = 0; k < g.dim; ++k)
        for (std::size_t i = 0; i < g.size(); ++i) s.u(k, i) = u[k];
    return s;
}

// Smooth periodic pulse on [0, 1).
FluidState smooth_pulse(int n, double gamma) {
    const Grid g = Grid::box1d(n, 0.0, 1.0, true);
    FluidState s{Field::scalar(g), Field::vector(g), gamma};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        s.rho[i] = 1.0 + 0.2 * std::sin(2.0 * M_PI * x);
        s.u[i] = 0.3 * std::cos(2.0 * M_PI * x);
    }
    return s;
}

FluidState sod(int n) {
    const Grid g = Grid::box1d(n, 0.0, 1.0, false);
    FluidState s{Field::scalar(g), Field::vector(g), 1.4};
    for (std::size_t i = 0; i < g.size(); ++i) s.rho[i] = g.center(i)[0] < 0.5 ? 1.0 : 0.125;
    return s;
}

FluidState advance(FluidState s, double t_end, const SolverConfig& base) {
    SolverConfig cfg = base;
    cfg.t_end = t_end;
    cfg.snapshot_stride = 1'000'000;
    Trajectory tr = run(s, cfg);
    return tr.states.back();
}

double sum(const Field& f) { return std::accumulate(f.values().begin(), f.values().end(), 0.0); }

// Conservative restriction of a 1D fine-grid density onto a grid coarser by `r`.
std::vector<double> restrict_avg(const Field& fine, int r) {
    std::vector<double> out(fine.cells() / r, 0.0);
    for (std::size_t i = 0; i < fine.cells(); ++i) out[i / r] += fine[i] / r;
    return out;
}

}  // namespace

TEST_CASE("max_wave_speed examples") {
    const Grid g = Grid::box(2, {8, 8}, {0, 0}, {1, 1}, true);
    CHECK(max_wave_speed(uniform(g, 1.0, {0, 0}, 2.0)) == Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(max_wave_speed(uniform(g, 0.0, {0, 0}, 2.0)) == 0.0);
    CHECK(max_wave_speed(uniform(g, 4.0, {3, 0}, 3.0)) == Approx(3.0 + std::sqrt(3.0) * 4.0).epsilon(1e-14));
}

TEST_CASE("constant state is a steady state") {
    const Grid g = Grid::box(2, {16, 12}, {-1, -1}, {1, 2}, true);
    const FluidState s = uniform(g, 1.7, {0, 0}, 2.0);
    SolverConfig cfg;
    const double dt = stable_dt(s, cfg.cfl);
    const StepResult r = step_with_entropy(s, dt, cfg);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(r.state.rho[i] == Approx(1.7).epsilon(1e-15));
        CHECK(std::abs(r.state.u(0, i)) < 1e-15);
        CHECK(std::abs(r.entropy_production[i]) < 1e-12);
    }
    CHECK_FALSE(r.vacuum_clamped);
}

TEST_CASE("uniform flow on a periodic box is preserved") {
    const Grid g = Grid::box(2, {10, 10}, {0, 0}, {1, 1}, true);
    const FluidState s = uniform(g, 0.5, {0.3, -0.2}, 1.4);
    const FluidState out = step(s, 0.5 * stable_dt(s, 0.45), SolverConfig{});
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(out.rho[i] == Approx(0.5).epsilon(1e-14));
        CHECK(out.u(0, i) == Approx(0.3).epsilon(1e-13));
        CHECK(out.u(1, i) == Approx(-0.2).epsilon(1e-13));
    }
}

TEST_CASE("mass and momentum are conserved on a periodic box") {
    FluidState s = smooth_pulse(200, 2.0);
    SolverConfig cfg;
    const StepDiagnostics d0 = measure(s, cfg);
    for (int k = 0; k < 50; ++k) s = step(s, stable_dt(s, cfg.cfl), cfg);
    const StepDiagnostics d1 = measure(s, cfg);
    CHECK(std::abs(d1.mass - d0.mass) <= 1e-13 * d0.mass);
    CHECK(std::abs(d1.momentum[0] - d0.momentum[0]) <= 1e-13 * d0.mass);
}

TEST_CASE("two-dimensional conservation and mirror symmetry") {
    const Grid g = Grid::box(2, {32, 32}, {-1, -1}, {1, 1}, true);
    FluidState s{Field::scalar(g), Field::vector(g), 2.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        const double r2 = x[0] * x[0] + x[1] * x[1];
        s.rho[i] = 1.0 + 0.5 * std::exp(-8.0 * r2);
        s.u(0, i) = -0.4 * x[0] * std::exp(-4.0 * r2);
        s.u(1, i) = -0.4 * x[1] * std::exp(-4.0 * r2);
    }
    SolverConfig cfg;
    const double m0 = sum(s.rho);
    for (int k = 0; k < 20; ++k) s = step(s, stable_dt(s, cfg.cfl), cfg);
    double m1 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m1 += s.rho[i];
    CHECK(std::abs(m1 - m0) <= 1e-13 * m0);
    // diagonal reflection swaps the axes; the data and scheme are symmetric
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const std::size_t a = g.index(i, j, 0), b = g.index(j, i, 0);
            CHECK(s.rho[a] == Approx(s.rho[b]).epsilon(1e-12));
            CHECK(s.u(0, a) == Approx(s.u(1, b)).epsilon(1e-10).scale(1.0));
        }
}

TEST_CASE("step rejects an unstable time step and invalid configs") {
    const FluidState s = smooth_pulse(64, 2.0);
    SolverConfig cfg;
    const double lim = stable_dt(s, cfg.cfl);
    CHECK_THROWS_AS(step(s, 1.01 * lim, cfg), CflViolation);
    CHECK_THROWS_AS(step(s, -1.0, cfg), CflViolation);
    cfg.cfl = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.flux = "roe";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("stable_dt uses the per-axis speed sum") {
    const Grid g = Grid::box(2, {4, 4}, {0, 0}, {1, 2}, true);  // h = 0.25, 0.5
    const FluidState s = uniform(g, 1.0, {1, 0}, 2.0);
    const double c = std::sqrt(2.0);
    CHECK(stable_dt(s, 0.5) == Approx(0.5 / ((1.0 + c) / 0.25 + c / 0.5)).epsilon(1e-14));
}

TEST_CASE("vacuum stays vacuum") {
    const Grid g = Grid::box1d(40, -1.0, 1.0, false);
    FluidState s{Field::scalar(g), Field::vector(g), 2.0};
    for (std::size_t i = 0; i < g.size(); ++i) s.rho[i] = std::abs(g.center(i)[0]) < 0.3 ? 1.0 : 0.0;
    SolverConfig cfg;
    for (int k = 0; k < 10; ++k) s = step(s, stable_dt(s, cfg.cfl), cfg);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(s.rho[i] >= 0.0);
        CHECK(std::isfinite(s.u[i]));
        if (s.rho[i] == 0.0) CHECK(s.u[i] == 0.0);
    }
}

TEST_CASE("Sod data at 400 cells stays inside the 4x reference envelope") {
    SolverConfig cfg;
    const FluidState coarse = advance(sod(400), 0.1, cfg);
    const FluidState fine = advance(sod(1600), 0.1, cfg);
    const auto [clo, chi] = std::minmax_element(coarse.rho.values().begin(), coarse.rho.values().end());
    const auto [flo, fhi] = std::minmax_element(fine.rho.values().begin(), fine.rho.values().end());
    CHECK(*clo >= *flo * (1.0 - 0.02));
    CHECK(*chi <= *fhi * (1.0 + 0.02));
    // the coarse profile is close to the fine one in L1 as well
    const auto avg = restrict_avg(fine.rho, 4);
    double err = 0.0;
    for (std::size_t i = 0; i < avg.size(); ++i) err += std::abs(coarse.rho[i] - avg[i]) / 400.0;
    CHECK(err < 0.01);
}

TEST_CASE("run: constant data give identical snapshots") {
    const Grid g = Grid::box(2, {8, 8}, {0, 0}, {1, 1}, true);
    const FluidState s = uniform(g, 2.0, {0, 0}, 2.0);
    SolverConfig cfg;
    cfg.snapshot_stride = 3;
    const Trajectory tr = run(s, cfg);
    CHECK(tr.stop_reason == "t_end");
    CHECK(tr.times.back() == 1.0);
    CHECK(tr.series.size() == tr.steps.back() + 1);
    for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
    for (const auto& st : tr.states)
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(st.rho[i] == Approx(2.0).epsilon(1e-14));
    CHECK_FALSE(detect_blowup(tr).fit_t);
}

TEST_CASE("run: compressive tanh profile with tiny density") {
    const Grid g = Grid::box1d(4000, -5.0, 5.0, false);
    FluidState s{Field::scalar(g), Field::vector(g), 2.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.rho[i] = 1e-4;
        s.u[i] = -std::tanh(g.center(i)[0]);
    }
    SolverConfig cfg;
    cfg.t_end = 2.0;
    cfg.gradient_blowup_threshold = 50.0;
    const Trajectory tr = run(s, cfg);
    REQUIRE(tr.t_detect);
    CHECK(*tr.t_detect >= 0.8);
    CHECK(*tr.t_detect <= 1.3);
    const BlowupFit fit = detect_blowup(tr);
    REQUIRE(fit.fit_t);
    CHECK(*fit.fit_t == Approx(1.0).epsilon(0.25));
    for (const auto& d : tr.series) CHECK(d.entropy_production_max <= 1e-8);
}

TEST_CASE("detect_blowup on exact Riccati and flat series") {
    std::vector<double> t, v, flat;
    for (int k = 0; k <= 90; ++k) {
        t.push_back(0.01 * k);
        v.push_back(1.0 / (1.0 - 0.01 * k));
        flat.push_back(3.0);
    }
    const BlowupFit fit = detect_blowup(t, v, 1e9);
    REQUIRE(fit.fit_t);
    CHECK(*fit.fit_t == Approx(1.0).epsilon(0.01));
    CHECK_FALSE(fit.t_detect);
    const BlowupFit hit = detect_blowup(t, v, 5.0);
    REQUIRE(hit.t_detect);
    CHECK(*hit.t_detect == Approx(0.8));
    const BlowupFit none = detect_blowup(t, flat, 1e9);
    CHECK_FALSE(none.fit_t);
    CHECK_FALSE(none.t_detect);
}

TEST_CASE("entropy residual: shock run is admissible and dissipative") {
    SolverConfig cfg;
    FluidState s = advance(sod(400), 0.05, cfg);
    for (int k = 0; k < 20; ++k) {
        const double dt = stable_dt(s, cfg.cfl);
        const StepResult r = step_with_entropy(s, dt, cfg);
        const auto& v = r.entropy_production.values();
        CHECK(*std::max_element(v.begin(), v.end()) <= 1e-8);
        CHECK(std::accumulate(v.begin(), v.end(), 0.0) < 0.0);
        // the standalone evaluation reproduces the in-step field
        const Field again = entropy_production(s, r.state, dt, cfg);
        for (std::size_t i = 0; i < v.size(); i += 37) CHECK(again[i] == Approx(v[i]).scale(1.0).epsilon(1e-9));
        s = r.state;
    }
}

TEST_CASE("entropy residual vanishes under refinement for smooth flow") {
    SolverConfig cfg;
    std::vector<double> peak;
    for (int n : {200, 400, 800}) {
        const FluidState s = smooth_pulse(n, 2.0);
        const StepResult r = step_with_entropy(s, stable_dt(s, cfg.cfl), cfg);
        const auto& v = r.entropy_production.values();
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        peak.push_back(m);
    }
    MESSAGE("residual rates " << std::log2(peak[0] / peak[1]) << ", " << std::log2(peak[1] / peak[2]));
    // first order, approached from below: the deficit roughly halves per level
    const double r1 = std::log2(peak[0] / peak[1]), r2 = std::log2(peak[1] / peak[2]);
    CHECK(r2 > r1);
    CHECK(1.0 - r2 < 0.6 * (1.0 - r1));
    CHECK(r2 == Approx(1.0).epsilon(0.01));
}

TEST_CASE("MUSCL self-convergence on smooth data") {
    SolverConfig cfg;
    cfg.reconstruction = Reconstruction::muscl;
    std::vector<FluidState> sol;
    for (int n : {128, 256, 512}) sol.push_back(advance(smooth_pulse(n, 2.0), 0.1, cfg));
    auto err = [](const FluidState& c, const FluidState& f) {
        const auto avg = restrict_avg(f.rho, 2);
        double e = 0.0;
        for (std::size_t i = 0; i < avg.size(); ++i) e += std::abs(c.rho[i] - avg[i]);
        return e / static_cast<double>(avg.size());
    };
    const double e1 = err(sol[0], sol[1]), e2 = err(sol[1], sol[2]);
    MESSAGE("self-convergence order " << std::log2(e1 / e2));
    CHECK(std::log2(e1 / e2) >= 1.8);
}
