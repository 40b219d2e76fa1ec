#include "blowup/report.hpp"

#include <cmath>

#include "blowup/symmetrize.hpp"

namespace blowup {

namespace {

nlohmann::json point(const std::array<double, 3>& x, int d) { return std::vector<double>(x.begin(), x.begin() + d); }

// JSON has no infinity; non-finite margins are written as null.
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::blowup_sideris: return "blowup_sideris";
        case Verdict::blowup_thm25: return "blowup_thm25";
        case Verdict::global_prop27: return "global_prop27";
        case Verdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

int default_sobolev_index(int d) { return static_cast<int>(std::floor(1.0 + 0.5 * d)) + 1; }

CriteriaReport evaluate_criteria(const FluidState& s, const CriteriaConfig& cfg) {
    s.validate();
    const int d = s.rho.grid().dim;
    CriteriaReport r;
    r.config = cfg;
    if (r.config.m == 0) r.config.m = default_sobolev_index(d);
    const int m = r.config.m;
    r.dim = d;
    r.gamma = s.gamma;

    if (cfg.rho_bar > 0.0 && cfg.R > 0.0) {
        r.support_ok = support_condition(s, cfg.rho_bar, cfg.R);
        try {
            r.sideris = sideris_condition(s, cfg.rho_bar, cfg.R);
        } catch (const SupportViolation& e) {
            r.sideris_note = e.what();
        }
    } else {
        r.sideris_note = "integral condition needs rho_bar > 0 and R > 0";
    }

    r.nd = nd_condition(s.u);
    r.hm = hm_smallness(s, m, r.nd.found ? r.nd.lambda_max : 0.0);

    r.grassin = grassin_hypotheses(s, m, 1.0);
    const double alpha = cfg.alpha > 0.0 ? cfg.alpha : r.grassin.min_form_on_support;
    r.grassin = grassin_hypotheses(s, m, std::isfinite(alpha) ? alpha : 0.0);

    Field pw = Field::scalar(s.rho.grid());
    for (std::size_t i = 0; i < pw.cells(); ++i)
        pw[i] = s.rho[i] < kVacuumFloor ? 0.0 : std::pow(s.rho[i], 0.5 * (s.gamma - 1.0));
    r.density_norm = sobolev_norm(pw, m);
    r.density_small = r.density_norm < cfg.density_epsilon;

    if (r.sideris && r.sideris->holds && r.support_ok)
        r.verdict = Verdict::blowup_sideris;
    else if (r.nd.found && r.hm.holds)
        r.verdict = Verdict::blowup_thm25;
    else if (r.grassin.g1 && r.grassin.g2 && r.grassin.g3 && r.density_small)
        r.verdict = Verdict::global_prop27;
    return r;
}

nlohmann::json to_json(const CriteriaReport& r) {
    nlohmann::json j;
    j["config"] = {{"rho_bar", r.config.rho_bar},
                   {"R", r.config.R},
                   {"m", r.config.m},
                   {"alpha", r.config.alpha},
                   {"density_epsilon", r.config.density_epsilon}};
    j["dim"] = r.dim;
    j["gamma"] = r.gamma;
    if (r.sideris)
        j["sideris"] = {{"lhs", num(r.sideris->lhs)},
                        {"rhs", num(r.sideris->rhs)},
                        {"margin", num(r.sideris->lhs - r.sideris->rhs)},
                        {"holds", r.sideris->holds}};
    else
        j["sideris"] = {{"holds", false}, {"note", r.sideris_note}};
    j["support_ok"] = r.support_ok;
    j["nd"] = {{"found", r.nd.found},
               {"x0", point(r.nd.x0, r.dim)},
               {"lambda_max", num(r.nd.lambda_max)},
               {"xi0", point(r.nd.xi0, r.dim)},
               {"symmetric", r.nd.symmetric},
               {"full_lambda_min", num(r.nd.full_lambda_min)},
               {"asymmetric_cells", r.nd.asymmetric_cells}};
    j["hm_smallness"] = {{"value", num(r.hm.value)},
                         {"threshold", num(r.hm.threshold)},
                         {"margin", num(r.hm.threshold - r.hm.value)},
                         {"holds", r.hm.holds},
                         {"m", r.hm.m}};
    j["grassin"] = {{"g1", r.grassin.g1},
                    {"g2", r.grassin.g2},
                    {"g3", r.grassin.g3},
                    {"alpha", num(r.grassin.alpha)},
                    {"min_form", num(r.grassin.min_form)},
                    {"min_form_on_support", num(r.grassin.min_form_on_support)}};
    j["density"] = {{"norm", num(r.density_norm)}, {"epsilon", r.config.density_epsilon}, {"small", r.density_small}};
    j["verdict"] = to_string(r.verdict);
    return j;
}

nlohmann::json to_json(const SiderisSeries& s) {
    return {{"times", s.times},
            {"F", s.F},
            {"M", s.M},
            {"kinetic", s.kinetic},
            {"worst_rate_deficit", num(s.worst_rate_deficit)},
            {"mass_drift", num(s.mass_drift)},
            {"F_rate_ok", s.F_rate_ok},
            {"M_const_ok", s.M_const_ok},
            {"boundary_touched", s.boundary_touched}};
}

nlohmann::json to_json(const ConeSeries& c) {
    return {{"sigma", c.sigma},
            {"times", c.times},
            {"radius", c.radius},
            {"pad", c.pad},
            {"deviation", c.deviation},
            {"cells_tested", c.cells_tested},
            {"tight_deviation", c.tight_deviation},
            {"max_deviation", c.max_deviation}};
}

nlohmann::json to_json(const WeightedEnergy& w) {
    nlohmann::json j = {{"a", w.a},         {"b", w.b},           {"delta", w.delta},  {"times", w.times},
                        {"Gamma_k", w.gamma_k}, {"Gamma", w.Gamma}, {"scaled", w.scaled}};
    j["slope"] = w.slope ? num(*w.slope) : nlohmann::json(nullptr);
    return j;
}

}  // namespace blowup
