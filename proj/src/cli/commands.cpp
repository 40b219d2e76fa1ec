#include <spdlog/spdlog.h>

#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>

#include "blowup/burgers.hpp"
#include "blowup/calculus.hpp"
#include "blowup/cli.hpp"
#include "blowup/symmetrize.hpp"

namespace blowup::cli {

namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

// Timestamps live here so that report.json stays byte-identical across runs.
void write_metadata(const ExperimentConfig& c) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    write_json(c.output.dir / "metadata.json", {{"command", c.command}, {"timestamp", buf}, {"tool", "blowup"}});
}

void prepare_output(const ExperimentConfig& c) { std::filesystem::create_directories(c.output.dir); }

std::string extension(SnapshotFormat f) { return f == SnapshotFormat::binary ? ".bin" : ".csv"; }

void write_state(const ExperimentConfig& c, const std::string& stem, const FluidState& s) {
    write_snapshot(c.output.dir / (stem + extension(c.output.format)), {&s.rho, &s.u}, c.output.format);
}

std::string snapshot_stem(std::size_t step) {
    std::ostringstream os;
    os << "snapshot_" << std::setw(6) << std::setfill('0') << step;
    return os.str();
}

CriteriaConfig resolve_criteria(const ExperimentConfig& c, const InitialData& d) {
    CriteriaConfig k = c.criteria;
    k.rho_bar = c.criteria_rho_bar.value_or(d.rho_bar);
    k.R = c.criteria_R.value_or(d.support_radius);
    return k;
}

void write_series(const ExperimentConfig& c, const Trajectory& tr, double rho_bar) {
    std::ofstream out(c.output.dir / "series.csv");
    if (!out) throw std::runtime_error("cannot write series.csv");
    const FluidState& s0 = tr.states.front();
    const double volume = s0.rho.grid().volume();
    const int d = s0.rho.grid().dim;
    out << "step,t,dt,max_grad_u,max_compression,mass,M";
    for (int a = 0; a < d; ++a) out << ",momentum_" << a;
    out << ",total_entropy,kinetic,F,entropy_production_max,max_wave_speed,vacuum_clamped\n";
    out << std::setprecision(17);
    for (std::size_t n = 0; n < tr.series.size(); ++n) {
        const auto& s = tr.series[n];
        out << n << ',' << s.t << ',' << s.dt << ',' << s.max_grad_u << ',' << s.max_compression << ',' << s.mass
            << ',' << s.mass - rho_bar * volume;
        for (int a = 0; a < d; ++a) out << ',' << s.momentum[a];
        out << ',' << s.total_entropy << ',' << s.kinetic << ',' << s.F << ',' << s.entropy_production_max << ','
            << s.max_wave_speed << ',' << (s.vacuum_clamped ? 1 : 0) << '\n';
    }
}

void write_snapshots(const ExperimentConfig& c, const Trajectory& tr) {
    if (!c.output.snapshots) return;
    for (std::size_t k = 0; k < tr.states.size(); ++k) write_state(c, snapshot_stem(tr.steps[k]), tr.states[k]);
}

json run_summary(const Trajectory& tr) {
    const BlowupFit fit = detect_blowup(tr);
    double prod = -std::numeric_limits<double>::infinity(), drift = 0.0;
    std::size_t clamped = 0;
    const double m0 = tr.series.front().mass;
    for (std::size_t n = 1; n < tr.series.size(); ++n) {
        prod = std::max(prod, tr.series[n].entropy_production_max);
        drift = std::max(drift, std::abs(tr.series[n].mass - m0));
        if (tr.series[n].vacuum_clamped) ++clamped;
    }
    const double g0 = tr.series.front().max_grad_u;
    return {{"stop_reason", tr.stop_reason},
            {"abort_message", tr.abort_message},
            {"steps", tr.series.size() - 1},
            {"t_final", tr.series.back().t},
            {"threshold", num(tr.threshold)},
            // detection bias: how far above the initial gradient the trigger sits
            {"threshold_over_initial", g0 > 0.0 ? num(tr.threshold / g0) : json(nullptr)},
            {"t_detect", opt(tr.t_detect)},
            {"fit_t", opt(fit.fit_t)},
            {"fit_points", fit.fit_points},
            {"max_entropy_production", num(prod)},
            {"mass_drift_relative", m0 > 0.0 ? num(drift / m0) : num(drift)},
            {"vacuum_clamped_steps", clamped}};
}

// Runs the solver, keeping the partial trajectory if the step aborts.
Trajectory simulate(const FluidState& s0, const SolverConfig& cfg, bool& aborted) {
    Trajectory tr;
    aborted = false;
    try {
        run(s0, cfg, tr);
    } catch (const SimulationAbort&) {
        aborted = true;
    }
    return tr;
}

void print_check_table(const CriteriaReport& r) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << std::left << std::setprecision(6);
    std::cout << "  integral condition : ";
    if (r.sideris)
        std::cout << "lhs " << r.sideris->lhs << "  rhs " << r.sideris->rhs << "  holds " << yn(r.sideris->holds);
    else
        std::cout << "n/a (" << r.sideris_note << ")";
    std::cout << "\n  support condition  : " << yn(r.support_ok) << '\n';
    std::cout << "  negative direction : " << yn(r.nd.found);
    if (r.nd.found) std::cout << "  lambda_max " << r.nd.lambda_max;
    std::cout << "\n  H^m smallness      : value " << r.hm.value << "  threshold " << r.hm.threshold << "  holds "
              << yn(r.hm.holds) << "  (m = " << r.hm.m << ")\n";
    std::cout << "  G-1 / G-2 / G-3    : " << yn(r.grassin.g1) << " / " << yn(r.grassin.g2) << " / "
              << yn(r.grassin.g3) << "  alpha " << r.grassin.alpha << '\n';
    std::cout << "  density small      : " << yn(r.density_small) << "  norm " << r.density_norm << '\n';
    std::cout << "  verdict            : " << to_string(r.verdict) << '\n';
}

// lambda_0 from u0(x0 + r xi0) - u0(x0) = -lambda_0 r xi0, projected on xi0.
double probe_lambda0(const Field& u0, const NdResult& nd, double r) {
    const CharacteristicMap map(u0);
    const int d = u0.grid().dim;
    std::array<double, 3> x1 = nd.x0;
    for (int a = 0; a < d; ++a) x1[a] += r * nd.xi0[a];
    const auto ua = map.u0(nd.x0), ub = map.u0(x1);
    double proj = 0.0;
    for (int a = 0; a < d; ++a) proj += (ub[a] - ua[a]) * nd.xi0[a];
    return -proj / r;
}

// max over snapshots with t <= t_max of ||pi grad pi||_inf.
double pi_grad_pi(const Trajectory& tr, double t_max) {
    double best = 0.0;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        if (tr.times[k] > t_max) break;
        const SymmetrizedState s = to_symmetrized(tr.states[k]);
        const Field g = gradient(s.pi, DiffMethod::central);
        const int d = s.pi.grid().dim;
        for (std::size_t i = 0; i < s.pi.cells(); ++i) {
            double n2 = 0.0;
            for (int a = 0; a < d; ++a) n2 += g(a, i) * g(a, i);
            best = std::max(best, std::abs(s.pi[i]) * std::sqrt(n2));
        }
    }
    return best;
}

}  // namespace

Grid build_grid(const GridSpec& s) {
    try {
        return Grid::box(s.dim, s.n, s.lo, s.hi, s.periodic);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

InitialData build_data(const ExperimentConfig& c) {
    const auto& k = c.data.kind;
    const double gamma = c.data.family.gamma;
    try {
        if (k == "file") {
            auto fields = read_snapshot(c.data.path, c.grid.periodic);
            if (fields.empty()) throw ConfigError("empty snapshot: " + c.data.path);
            const Grid& g = fields.front().grid();
            if (static_cast<int>(fields.size()) != 1 + g.dim)
                throw ConfigError("snapshot must hold rho and " + std::to_string(g.dim) + " velocity components");
            FluidState s{fields[0], Field::vector(g), gamma};
            for (int a = 0; a < g.dim; ++a) std::copy(fields[1 + a].values().begin(), fields[1 + a].values().end(),
                                                      s.u.comp(a).begin());
            s.validate();
            return {s, c.data.family.rho_bar, c.data.family.support_radius};
        }
        const Grid g = build_grid(c.grid);
        if (k == "example1" || k == "example3") {
            FluidState s{gaussian_density(g, c.data.density_amplitude, c.data.density_width),
                         k == "example1" ? example1(g, c.data.R, c.data.n) : example3_radial(g, c.data.R), gamma};
            return {s, 0.0, 0.0};
        }
        if (k == "example2") {
            const double lam = c.data.lambda > 0.0 ? c.data.lambda : 4.0 * c.data.R;
            Example2Data e = example2(g, c.data.R, lam, c.data.family.rho_bar, c.data.n, gamma);
            return {e.state, c.data.family.rho_bar, e.support_radius};
        }
        FamilyParams fp = c.data.family;
        fp.kind = k;
        return standard_family(g, fp);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("data: ") + e.what());
    }
}

int cmd_gen_data(const ExperimentConfig& c) {
    const InitialData d = build_data(c);
    prepare_output(c);
    write_state(c, snapshot_stem(0), d.state);
    const SolverConfig solver = c.solver;
    const StepDiagnostics m = measure(d.state, solver);
    write_json(c.output.dir / "report.json",
               {{"config", to_json(c)},
                {"data", {{"rho_bar", d.rho_bar},
                          {"support_radius", d.support_radius},
                          {"mass", m.mass},
                          {"max_wave_speed", m.max_wave_speed},
                          {"max_grad_u", m.max_grad_u}}}});
    write_metadata(c);
    std::cout << "wrote " << (c.output.dir / (snapshot_stem(0) + extension(c.output.format))).string() << '\n';
    return kExitOk;
}

int cmd_check(const ExperimentConfig& c) {
    const InitialData d = build_data(c);
    const CriteriaReport r = evaluate_criteria(d.state, resolve_criteria(c, d));
    prepare_output(c);
    write_json(c.output.dir / "report.json", {{"config", to_json(c)}, {"criteria", to_json(r)}});
    write_metadata(c);
    print_check_table(r);
    return kExitOk;
}

int cmd_burgers(const ExperimentConfig& c) {
    const InitialData d = build_data(c);
    const Field& u0 = d.state.u;
    const BlowupVerdict v = burgers_blowup_time(u0);
    const int dim = u0.grid().dim;
    json rep = {{"blows_up", v.blows_up},
                {"t_star", num(v.t_star)},
                {"x_star", std::vector<double>(v.x_star.begin(), v.x_star.begin() + dim)},
                {"lambda", v.lambda},
                {"sym_lambda", v.sym_lambda},
                {"asymmetric_cells", v.asymmetric_cells}};
    prepare_output(c);
    if (c.burgers_t > 0.0) {
        if (v.blows_up && c.burgers_t >= v.t_star)
            throw HypothesisRefusal("burgers.t = " + std::to_string(c.burgers_t) + " is past the caustic time " +
                                    std::to_string(v.t_star));
        const CharacteristicMap map(u0);
        const Field vel = burgers_velocity(map, u0.grid(), c.burgers_t);
        write_snapshot(c.output.dir / ("burgers_velocity" + extension(c.output.format)), {&vel}, c.output.format);
        rep["evaluated_t"] = c.burgers_t;
    }
    write_json(c.output.dir / "report.json", {{"config", to_json(c)}, {"burgers", rep}});
    write_metadata(c);
    std::cout << "t_star = " << (v.blows_up ? std::to_string(v.t_star) : std::string("inf")) << '\n';
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& c) {
    const InitialData d = build_data(c);
    bool aborted = false;
    const Trajectory tr = simulate(d.state, c.solver, aborted);
    prepare_output(c);
    write_series(c, tr, d.rho_bar);
    write_snapshots(c, tr);
    write_json(c.output.dir / "report.json", {{"config", to_json(c)}, {"run", run_summary(tr)}});
    write_metadata(c);
    std::cout << "stop: " << tr.stop_reason << " at t = " << tr.series.back().t << '\n';
    if (aborted) {
        std::cerr << "simulation aborted: " << tr.abort_message << '\n';
        return kExitAbort;
    }
    return kExitOk;
}

int cmd_verify_theorem(const ExperimentConfig& c) {
    const InitialData d = build_data(c);
    const CriteriaReport crit = evaluate_criteria(d.state, resolve_criteria(c, d));
    const std::string& th = c.theorem.name;
    SolverConfig solver = c.solver;
    json result;
    double bound = 0.0;

    if (th == "thm2.2") {
        if (!crit.sideris)
            throw HypothesisRefusal("integral condition not applicable: " + crit.sideris_note);
        if (!crit.sideris->holds)
            throw HypothesisRefusal("integral condition fails: lhs " + std::to_string(crit.sideris->lhs) +
                                    " < rhs " + std::to_string(crit.sideris->rhs));
        if (!crit.support_ok) throw HypothesisRefusal("support condition fails outside B_R");
    } else if (th == "prop2.3" || th == "thm2.5") {
        if (!crit.nd.found) throw HypothesisRefusal("no symmetric velocity gradient with a negative eigenvalue");
        if (th == "thm2.5" && !crit.hm.holds)
            throw HypothesisRefusal("H^m smallness fails: value " + std::to_string(crit.hm.value) +
                                    " >= threshold " + std::to_string(crit.hm.threshold));
        bound = (th == "thm2.5" ? 2.0 : 1.0) / crit.nd.lambda_max;
        // the run has to reach past the bound it is tested against
        solver.t_end = std::max(solver.t_end, c.theorem.tolerance * bound * 1.05);
    } else if (th == "prop2.7") {
        const auto& g = crit.grassin;
        if (!(g.g1 && g.g2 && g.g3))
            throw HypothesisRefusal(std::string("Grassin-type hypotheses fail: G-1 ") + (g.g1 ? "ok" : "fails") +
                                    ", G-2 " + (g.g2 ? "ok" : "fails") + ", G-3 " + (g.g3 ? "ok" : "fails"));
        if (!crit.density_small)
            throw HypothesisRefusal("density not small: norm " + std::to_string(crit.density_norm) +
                                    " >= epsilon " + std::to_string(crit.config.density_epsilon));
    }

    bool aborted = false;
    const Trajectory tr = simulate(d.state, solver, aborted);
    prepare_output(c);
    write_series(c, tr, d.rho_bar);
    write_snapshots(c, tr);
    const BlowupFit fit = detect_blowup(tr);
    bool pass = false;

    if (aborted) {
        result["note"] = "simulation aborted: " + tr.abort_message;
    } else if (th == "thm2.2") {
        const SiderisSeries sf = sideris_functionals(tr, crit.config.rho_bar);
        bool increasing = true;
        for (std::size_t k = 1; k < sf.F.size(); ++k) increasing = increasing && sf.F[k] > sf.F[k - 1];
        result["sideris_functionals"] = to_json(sf);
        result["F_increasing"] = increasing;
        pass = sf.F_rate_ok && sf.M_const_ok && increasing;
    } else if (th == "prop2.3" || th == "thm2.5") {
        const std::optional<double> t_obs = fit.fit_t ? fit.fit_t : tr.t_detect;
        result["bound"] = bound;
        result["bound_with_tolerance"] = c.theorem.tolerance * bound;
        result["observed_t"] = opt(t_obs);
        if (t_obs) result["ratio"] = *t_obs / bound;
        pass = t_obs && *t_obs <= c.theorem.tolerance * bound;
        if (th == "prop2.3") {
            // the smallness hypothesis is stated on the solution: evaluated a posteriori
            const double lambda0 = probe_lambda0(d.state.u, crit.nd, c.theorem.r);
            double M = 0.0;
            for (const auto& s : tr.series)
                if (s.t <= bound) M = std::max(M, s.max_grad_u);
            const double lhs = std::abs(crit.nd.lambda_max - lambda0) + pi_grad_pi(tr, bound);
            json cond = {{"lambda0", lambda0}, {"r", c.theorem.r}, {"M", M}, {"lhs", lhs}};
            if (lambda0 > 0.0 && M > 0.0) {
                const double eps = prop23_epsilon(lambda0, crit.nd.lambda_max, c.theorem.r, M);
                cond["epsilon0"] = eps;
                cond["holds"] = lhs <= eps;
            } else {
                cond["holds"] = false;
            }
            cond["note"] = "M is measured on the discrete run up to min(t_end, bound); conditional check";
            result["smallness_a_posteriori"] = cond;
        }
    } else if (th == "prop2.7") {
        const CharacteristicMap map(d.state.u);
        if (tr.t_detect) {
            result["note"] = "blow-up detected at t = " + std::to_string(*tr.t_detect);
        } else {
            const WeightedEnergy w =
                weighted_energy(tr, map, crit.config.m, c.theorem.s, c.solver.diagnostic_density_floor);
            result["weighted_energy"] = to_json(w);
            pass = w.slope && *w.slope <= c.theorem.slope_max;
        }
    }

    result["theorem"] = th;
    result["pass"] = pass;
    result["run"] = run_summary(tr);
    result["t_end_used"] = solver.t_end;
    write_json(c.output.dir / "report.json", {{"config", to_json(c)}, {"criteria", to_json(crit)}, {"verify", result}});
    write_metadata(c);
    std::cout << th << ": " << (pass ? "PASS" : "FAIL") << '\n';
    if (aborted) return kExitAbort;
    return pass ? kExitOk : kExitVerdictFail;
}

int run_command(const ExperimentConfig& c) {
    try {
        if (c.command == "gen-data") return cmd_gen_data(c);
        if (c.command == "check") return cmd_check(c);
        if (c.command == "burgers") return cmd_burgers(c);
        if (c.command == "simulate") return cmd_simulate(c);
        if (c.command == "verify-theorem") return cmd_verify_theorem(c);
        throw ConfigError("unknown command: " + c.command);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const HypothesisRefusal& e) {
        std::cerr << "refused: " << e.what() << '\n';
        try {
            prepare_output(c);
            write_json(c.output.dir / "report.json", {{"config", to_json(c)}, {"refused", e.what()}});
        } catch (const std::exception&) {
        }
        return kExitRefused;
    } catch (const SimulationAbort& e) {
        std::cerr << "simulation aborted at t = " << e.t << ": " << e.what() << '\n';
        return kExitAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace blowup::cli
