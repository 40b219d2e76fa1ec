#include "blowup/initial_data.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowup/criteria.hpp"

namespace blowup {

namespace {

double g_mollifier(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double radius(const std::array<double, 3>& x, int dim) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
    return std::sqrt(r2);
}

void require_2d(const Grid& g, const char* what) {
    if (g.dim != 2) throw std::invalid_argument(std::string(what) + " is defined on a 2D grid");
}

}  // namespace

double smooth_bump(const BumpProfile& p, double z) {
    if (!(p.inner < p.outer)) throw std::invalid_argument("bump needs inner < outer");
    const double t = std::clamp((std::abs(z) - p.inner) / (p.outer - p.inner), 0.0, 1.0);
    const double a = g_mollifier(1.0 - t), b = g_mollifier(t);
    return a / (a + b);
}

Field example1(const Grid& g, double R, int n) {
    require_2d(g, "example1");
    if (!(R > 1.0) || n < 1) throw std::invalid_argument("example1 needs R > 1 and n >= 1");
    const BumpProfile phi{1.0, 2.0};
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        const double s1 = 1.0 + x[0] * x[0] / (R * R);
        const double s2 = 1.0 + x[1] * x[1] / (R * R);
        u(0, i) = -x[0] * std::pow(s1, -n) * smooth_bump(phi, s1 * x[1] / R);
        u(1, i) = -x[1] * std::pow(s2, -n) * smooth_bump(phi, s2 * x[0] / R);
    }
    return u;
}

Example2Data example2(const Grid& g, double R, double lambda, double rho_bar, int n, double gamma) {
    if (!(lambda > 2.0 * R)) throw std::invalid_argument("example2 needs lambda > 2R");
    Example2Data out;
    out.state = FluidState{Field::scalar(g), example1(g, R, n), gamma};
    out.state.rho.fill(rho_bar);
    const BumpProfile psi{2.0 * R, lambda};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = smooth_bump(psi, radius(g.center(i), 2));
        out.state.u(0, i) *= w;
        out.state.u(1, i) *= w;
    }
    out.support_radius = lambda;
    return out;
}

Field example3_radial(const Grid& g, double R) {
    require_2d(g, "example3_radial");
    if (!(R > 3.0)) throw std::invalid_argument("example3_radial needs R > 3 so the origin is outside supp h");
    const BumpProfile phi{1.0, 2.0};
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        const double r = radius(x, 2);
        if (r == 0.0) continue;
        const double h = R * std::exp(-r / R) * smooth_bump(phi, r - R);
        u(0, i) = h * x[0] / r;
        u(1, i) = h * x[1] / r;
    }
    return u;
}

Field gaussian_density(const Grid& g, double amplitude, double width) {
    Field rho = Field::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = radius(g.center(i), g.dim);
        rho[i] = amplitude * std::exp(-r * r / (width * width));
    }
    return rho;
}

namespace {

InitialData constant_state(const Grid& g, const FamilyParams& p) {
    InitialData d{FluidState{Field::scalar(g), Field::vector(g), p.gamma}, p.rho_bar, 0.0};
    d.state.rho.fill(p.rho_bar);
    return d;
}

InitialData compressive_1d(const Grid& g, const FamilyParams& p) {
    if (g.dim != 1) throw std::invalid_argument("compressive_1d is one-dimensional");
    if (!(p.lambda0 > 0.0)) throw std::invalid_argument("compressive_1d needs lambda0 > 0");
    InitialData d{FluidState{Field::scalar(g), Field::vector(g), p.gamma}, p.rho_amplitude, p.plateau.outer};
    d.state.rho.fill(p.rho_amplitude);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        d.state.u[i] = -p.lambda0 * x * smooth_bump(p.plateau, x);
    }
    return d;
}

// u_a(x) = int_0^{x_a} phi(|s|) ds per component: equal to x_a on the plateau,
// saturating outside it, so grad u = diag(phi) >= 0 everywhere.
double plateau_primitive(const BumpProfile& p, double x) {
    const double ax = std::abs(x);
    if (ax <= p.inner) return x;
    // Gauss-Legendre on the transition band [inner, min(|x|, outer)]
    static constexpr double nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
    static constexpr double weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                          0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                          0.2223810344533745, 0.1012285362903763};
    const double hi = std::min(ax, p.outer);
    const int panels = 16;
    const double w = (hi - p.inner) / panels;
    double acc = p.inner;
    for (int k = 0; k < panels; ++k) {
        const double mid = p.inner + (k + 0.5) * w;
        for (int q = 0; q < 8; ++q) acc += 0.5 * w * weights[q] * smooth_bump(p, mid + 0.5 * w * nodes[q]);
    }
    return x < 0.0 ? -acc : acc;
}

InitialData expansive_linear(const Grid& g, const FamilyParams& p) {
    InitialData d{FluidState{Field::scalar(g), Field::vector(g), p.gamma}, 0.0, p.rho_width};
    const BumpProfile rb{0.0, p.rho_width};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        for (int a = 0; a < g.dim; ++a) d.state.u(a, i) = plateau_primitive(p.plateau, x[a]);
        d.state.rho[i] = p.rho_amplitude * smooth_bump(rb, radius(x, g.dim));
    }
    return d;
}

InitialData sideris_pulse(const Grid& g, const FamilyParams& p) {
    const double R = p.support_radius;
    if (!(p.plateau.outer <= R) || !(p.rho_width <= R))
        throw std::invalid_argument("sideris_pulse: velocity cutoff and density bump must fit inside the support radius");
    if (!(p.margin > 0.0)) throw std::invalid_argument("sideris_pulse: margin must be positive");
    InitialData d{FluidState{Field::scalar(g), Field::vector(g), p.gamma}, p.rho_bar, R};
    const BumpProfile rb{0.0, p.rho_width};
    Field shape = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        const double r = radius(x, g.dim);
        d.state.rho[i] = p.rho_bar + p.rho_amplitude * smooth_bump(rb, r);
        const double w = smooth_bump(p.plateau, r);
        for (int a = 0; a < g.dim; ++a) shape(a, i) = x[a] * w;
    }
    auto ratio_minus_target = [&](double amp) {
        for (std::size_t k = 0; k < shape.values().size(); ++k) d.state.u.values()[k] = amp * shape.values()[k];
        const auto s = sideris_condition(d.state, p.rho_bar, R);
        return s.lhs / s.rhs - p.margin;
    };
    double hi = 1.0;
    int grow = 0;
    while (ratio_minus_target(hi) < 0.0) {
        hi *= 2.0;
        if (++grow > 80) throw std::runtime_error("sideris_pulse: bisection bracket not found (box too small?)");
    }
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::bisect(ratio_minus_target, 0.0, hi,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
    ratio_minus_target(0.5 * (bracket.first + bracket.second));
    return d;
}

}  // namespace

InitialData standard_family(const Grid& g, const FamilyParams& p) {
    if (!(p.gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (p.kind == "constant") return constant_state(g, p);
    if (p.kind == "compressive_1d") return compressive_1d(g, p);
    if (p.kind == "expansive_linear") return expansive_linear(g, p);
    if (p.kind == "sideris_pulse") return sideris_pulse(g, p);
    throw std::invalid_argument("unknown data family '" + p.kind + "'");
}

}  // namespace blowup
