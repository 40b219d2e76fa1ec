#pragma once

#include <optional>
#include <string>

#include "blowup/criteria.hpp"
#include "json.hpp"

namespace blowup {

enum class Verdict { blowup_sideris, blowup_thm25, global_prop27, undetermined };
std::string to_string(Verdict v);

struct CriteriaConfig {
    double rho_bar = 0.0;
    double R = 0.0;                 // support radius for the integral condition
    int m = 0;                      // Sobolev index; 0 picks the smallest integer > 1 + d/2
    double alpha = 0.0;             // G-3 margin; 0 uses the smallest form on supp(rho0)
    double density_epsilon = 1e-2;  // ||rho^{(gamma-1)/2}||_{H^m} below this counts as small
};

struct CriteriaReport {
    CriteriaConfig config;
    int dim = 1;
    double gamma = 0.0;
    std::optional<SiderisResult> sideris;  // empty when rho_bar = 0 or data leave B_R
    std::string sideris_note;
    bool support_ok = false;
    NdResult nd;
    HmSmallness hm;
    GrassinHypotheses grassin;
    double density_norm = 0.0;  // ||rho^{(gamma-1)/2}||_{H^m}
    bool density_small = false;
    Verdict verdict = Verdict::undetermined;
};

int default_sobolev_index(int d);

// Evaluates every data-side hypothesis and picks the first satisfied set in
// the order blowup_sideris, blowup_thm25, global_prop27.
CriteriaReport evaluate_criteria(const FluidState& s, const CriteriaConfig& cfg);

nlohmann::json to_json(const CriteriaReport& r);
nlohmann::json to_json(const SiderisSeries& s);
nlohmann::json to_json(const ConeSeries& c);
nlohmann::json to_json(const WeightedEnergy& w);

}  // namespace blowup
