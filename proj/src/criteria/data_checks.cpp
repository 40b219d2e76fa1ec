#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blowup/criteria.hpp"
#include "blowup/small_matrix.hpp"
#include "blowup/symmetrize.hpp"

namespace blowup {

namespace {

double radius(const std::array<double, 3>& x, int dim) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
    return std::sqrt(r2);
}

double velocity_magnitude(const Field& u, std::size_t i) {
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) s += u(c, i) * u(c, i);
    return std::sqrt(s);
}

Mat cell_matrix(const Field& grad, std::size_t i) {
    const int d = grad.grid().dim;
    Mat A = Mat::zero(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) A(r, c) = grad(r * d + c, i);
    return A;
}

// rho^((gamma-1)/2) with the vacuum floor applied.
Field density_power(const FluidState& s) {
    Field r = Field::scalar(s.rho.grid());
    const double e = 0.5 * (s.gamma - 1.0);
    for (std::size_t i = 0; i < r.cells(); ++i) r[i] = s.rho[i] < kVacuumFloor ? 0.0 : std::pow(s.rho[i], e);
    return r;
}

// ||grad^2 f||_{H^m}. On non-periodic boxes the first derivative is taken by
// central differences so that data saturating at the edge (e.g. expansive
// velocities) still have a compactly supported gradient.
double second_derivative_hm(const Field& f, int m) {
    if (f.grid().all_periodic()) return derivative_sobolev_norm(f, 2, m);
    return derivative_sobolev_norm(gradient(f, DiffMethod::central), 1, m);
}

}  // namespace

double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

double background_sound_speed(double rho_bar, double gamma) {
    return std::sqrt(gamma) * std::pow(rho_bar, 0.5 * (gamma - 1.0));
}

bool support_condition(const FluidState& s, double rho_bar, double R) {
    const Grid& g = s.rho.grid();
    double excess = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        excess += s.rho[i] - rho_bar;
        if (radius(g.center(i), g.dim) < R) continue;
        if (std::abs(s.rho[i] - rho_bar) > kBackgroundTol || velocity_magnitude(s.u, i) > kBackgroundTol)
            return false;
    }
    return excess * g.cell_volume() >= -kBackgroundTol * g.volume();
}

SiderisResult sideris_condition(const FluidState& s, double rho_bar, double R) {
    if (!(R > 0.0) || !(rho_bar >= 0.0)) throw std::invalid_argument("sideris_condition needs R > 0, rho_bar >= 0");
    const Grid& g = s.rho.grid();
    double moment = 0.0, rho_max = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        if (radius(x, g.dim) >= R &&
            (std::abs(s.rho[i] - rho_bar) > kBackgroundTol || velocity_magnitude(s.u, i) > kBackgroundTol))
            throw SupportViolation("data differ from the background outside B_R");
        double ux = 0.0;
        for (int a = 0; a < g.dim; ++a) ux += s.u(a, i) * x[a];
        moment += s.rho[i] * ux;
        rho_max = std::max(rho_max, std::abs(s.rho[i]));
    }
    SiderisResult r;
    r.lhs = moment * g.cell_volume() / (sphere_area(g.dim) * std::pow(R, g.dim + 1));
    r.rhs = (g.dim + 1) * background_sound_speed(rho_bar, s.gamma) * rho_max;
    r.holds = r.lhs >= r.rhs;
    return r;
}

NdResult nd_condition(const Field& u0) {
    const Grid& g = u0.grid();
    const Field grad = velocity_gradient(u0);
    NdResult r;
    double best = 0.0, full_best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Mat A = cell_matrix(grad, i);
        const double asym = frobenius(A - transpose(A));
        const bool symmetric = asym <= 1e-8 * frobenius(A);
        const auto ev = real_eigenvalues(A);
        if (!ev.empty() && ev.front() < full_best) {
            full_best = ev.front();
            r.full_x = g.center(i);
        }
        if (!symmetric) {
            ++r.asymmetric_cells;
            continue;
        }
        const auto E = sym_eigen(A);
        if (E.values[0] < best) {
            best = E.values[0];
            r.x0 = g.center(i);
            r.xi0 = E.vectors[0];
            r.symmetric = true;
        }
    }
    r.found = best < 0.0;
    r.lambda_max = -best;
    r.full_lambda_min = full_best;
    return r;
}

double hm_threshold(double lambda_max, double gamma) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    return lambda_max * lambda_max / (5.0 * (gamma - 1.0));
}

HmSmallness hm_smallness(const FluidState& s, int m, double lambda_max) {
    const int d = s.rho.grid().dim;
    if (!(m > 1.0 + 0.5 * d)) throw std::invalid_argument("hm_smallness needs m > 1 + d/2");
    const Field r = density_power(s);
    HmSmallness out;
    out.m = m;
    const double amp = linf_norm(r);
    // the velocity term is irrelevant when the density factor vanishes
    out.value = amp == 0.0 ? 0.0 : (second_derivative_hm(r, m) + second_derivative_hm(s.u, m)) * amp;
    out.threshold = hm_threshold(lambda_max, s.gamma);
    out.holds = out.value < out.threshold;
    return out;
}

double prop23_epsilon(double lambda0, double lambda_max, double r, double M) {
    if (!(lambda0 > 0.0) || !(lambda_max > 0.0) || !(r > 0.0) || !(M > 0.0))
        throw std::invalid_argument("prop23_epsilon needs positive arguments");
    const double q = M / lambda_max;
    const double bracket = r * q + 2.0 * std::exp(q) / M;
    return 0.5 * lambda0 * r / bracket;
}

double riccati_bound(double nu0, double t) {
    if (!(nu0 > 0.0)) throw std::invalid_argument("riccati_bound needs nu0 > 0");
    if (t < 0.0) throw std::invalid_argument("riccati_bound needs t >= 0");
    if (t >= 2.0 / nu0) throw std::domain_error("riccati_bound: t is at or beyond the pole 2/nu0");
    return 2.0 * nu0 / (2.0 - nu0 * t);
}

RelativeEntropyPair relative_entropy(const FluidState& s, double rho_bar) {
    if (!(rho_bar > 0.0)) throw std::invalid_argument("relative_entropy needs rho_bar > 0");
    const Grid& g = s.rho.grid();
    const double gm = s.gamma;
    const auto P = [gm](double r) { return std::pow(r, gm) / (gm - 1.0); };
    const double dP_bar = gm / (gm - 1.0) * std::pow(rho_bar, gm - 1.0);
    RelativeEntropyPair out{Field::scalar(g), Field::vector(g)};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double rho = s.rho[i];
        const double speed = velocity_magnitude(s.u, i);
        if (rho < kVacuumFloor) {
            if (rho * speed > kVacuumFloor)
                throw std::invalid_argument("relative_entropy: vacuum cell carries momentum");
            out.eta[i] = dP_bar * rho_bar - P(rho_bar);
            continue;
        }
        const double eta = 0.5 * rho * speed * speed + P(rho) - dP_bar * (rho - rho_bar) - P(rho_bar);
        out.eta[i] = eta;
        for (int a = 0; a < g.dim; ++a) out.q(a, i) = s.u(a, i) * eta;
    }
    return out;
}

GrassinHypotheses grassin_hypotheses(const FluidState& s, int m, double alpha) {
    const Grid& g = s.rho.grid();
    if (!(m > 1.0 + 0.5 * g.dim)) throw std::invalid_argument("grassin_hypotheses needs m > 1 + d/2");
    GrassinHypotheses out;
    out.alpha = alpha;
    const Field grad = velocity_gradient(s.u);
    const double h2 = second_derivative_hm(s.u, m - 1);
    out.g1 = std::isfinite(h2) && std::isfinite(linf_norm(grad)) && grad.all_finite();

    double min_form = std::numeric_limits<double>::infinity();
    double min_supp = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double lo = sym_eigen(cell_matrix(grad, i)).values[0];
        min_form = std::min(min_form, lo);
        if (s.rho[i] > kBackgroundTol) min_supp = std::min(min_supp, lo);
    }
    out.min_form = min_form;
    out.min_form_on_support = min_supp;
    out.g2 = min_form >= -kBackgroundTol;
    const bool compact = !touches_boundary(s.rho, 2, kBackgroundTol);
    out.g3 = compact && alpha > 0.0 && min_supp >= alpha - kBackgroundTol;
    return out;
}

}  // namespace blowup
