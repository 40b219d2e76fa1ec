#include "blowup/interpolation_lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowup/calculus.hpp"

namespace blowup {

namespace {
double sup_sqrt(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return std::sqrt(m);
}
}  // namespace

LemmaRatios check_interpolation_lemmas(const Field& psi, const Field& phi) {
    if (psi.kind() != FieldKind::scalar || phi.kind() != FieldKind::scalar)
        throw std::invalid_argument("interpolation lemmas take scalar fields");
    if (!psi.grid().same_shape(phi.grid())) throw std::invalid_argument("psi and phi must share a grid");
    const Grid& g = psi.grid();

    const auto d1s = derivative_norm_sq(psi, 1), d2s = derivative_norm_sq(psi, 2);
    const auto d3s = derivative_norm_sq(psi, 3), d4s = derivative_norm_sq(psi, 4);
    const auto d1p = derivative_norm_sq(phi, 1), d2p = derivative_norm_sq(phi, 2);
    const auto d3p = derivative_norm_sq(phi, 3), d4p = derivative_norm_sq(phi, 4);

    std::vector<double> q42(g.size()), lhs43(g.size()), rhs43(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        q42[i] = d2s[i] * d2s[i];
        lhs43[i] = (d2s[i] + d2p[i]) * (d3s[i] + d3p[i]);
        rhs43[i] = d4p[i] + d4s[i];
    }

    LemmaRatios r;
    const double den42 = sup_sqrt(d1s) * sup_sqrt(d1s) * integrate(d3s, g);
    if (den42 > 0.0 && std::isfinite(den42)) r.ratio42 = integrate(q42, g) / den42;
    const double lip = 1.0 + sup_sqrt(d1p) + sup_sqrt(d1s);
    const double den43 = lip * lip * lip * integrate(rhs43, g);
    if (den43 > 0.0 && std::isfinite(den43)) r.ratio43 = integrate(lhs43, g) / den43;
    return r;
}

}  // namespace blowup
