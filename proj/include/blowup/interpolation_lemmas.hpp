#pragma once

#include <optional>

#include "blowup/field.hpp"

namespace blowup {

// Ratios of the two sides of the W^{1,inf}/W^{3,2} interpolation inequalities.
// A ratio is empty when its denominator vanishes (e.g. grad^3 psi == 0).
//   ratio42 = int |grad^2 psi|^4 / (||grad psi||_inf^2 int |grad^3 psi|^2)
//   ratio43 = int (|grad^2 psi|^2 + |grad^2 phi|^2)(|grad^3 psi|^2 + |grad^3 phi|^2)
//             / ((1 + ||grad phi||_inf + ||grad psi||_inf)^3 int |grad^4 phi|^2 + |grad^4 psi|^2)
struct LemmaRatios {
    std::optional<double> ratio42;
    std::optional<double> ratio43;
};

LemmaRatios check_interpolation_lemmas(const Field& psi, const Field& phi);

}  // namespace blowup
