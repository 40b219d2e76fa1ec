#include "blowup/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blowup {

namespace {

Mat cell_matrix(const Field& grad, std::size_t i) {
    const int d = grad.grid().dim;
    Mat A = Mat::zero(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) A(r, c) = grad(r * d + c, i);
    return A;
}

double most_negative_real(const Mat& A) {
    const auto ev = real_eigenvalues(A);
    return ev.empty() ? 0.0 : std::min(0.0, ev.front());
}

double norm(const std::array<double, 3>& v, int d) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += v[a] * v[a];
    return std::sqrt(s);
}

}  // namespace

Mat burgers_gradient(const Mat& grad_u0, double t) {
    if (t < 0.0) throw std::invalid_argument("burgers_gradient needs t >= 0");
    const Mat J = Mat::identity(grad_u0.d) + t * grad_u0;
    const auto inv = inverse(J);
    if (!inv) {
        const double lam = most_negative_real(grad_u0);
        const double tc = lam < 0.0 ? -1.0 / lam : t;
        throw BlowupReached("I + t grad u0 is singular at t = " + std::to_string(t), tc);
    }
    return *inv * grad_u0;
}

BlowupVerdict burgers_blowup_time(const Field& u0) { return burgers_blowup_time(u0, default_method(u0.grid())); }

BlowupVerdict burgers_blowup_time(const Field& u0, DiffMethod method) {
    if (u0.kind() != FieldKind::vector) throw std::invalid_argument("burgers_blowup_time takes a velocity field");
    if (!u0.all_finite()) throw std::invalid_argument("burgers_blowup_time: non-finite velocity");
    const Grid& g = u0.grid();
    const Field grad = gradient(u0, method);
    BlowupVerdict v;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Mat A = cell_matrix(grad, i);
        const double lam = most_negative_real(A);
        if (lam < v.lambda) {
            v.lambda = lam;
            v.x_star = g.center(i);
        }
        v.sym_lambda = std::min(v.sym_lambda, sym_eigen(A).values[0]);
        if (frobenius(A - transpose(A)) > 1e-8 * frobenius(A)) ++v.asymmetric_cells;
    }
    v.blows_up = v.lambda < 0.0;
    if (v.blows_up) v.t_star = -1.0 / v.lambda;
    return v;
}

CharacteristicMap::CharacteristicMap(const Field& u0) : spline_(u0) {
    if (u0.kind() != FieldKind::vector) throw std::invalid_argument("CharacteristicMap takes a velocity field");
}

std::array<double, 3> CharacteristicMap::u0(const std::array<double, 3>& x) const {
    std::array<double, 3> v{};
    spline_.evaluate(x, v.data(), nullptr);
    return v;
}

Mat CharacteristicMap::grad_u0(const std::array<double, 3>& x) const {
    const int d = dim();
    double val[3], grad[9];
    spline_.evaluate(x, val, grad);
    Mat A = Mat::zero(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) A(r, c) = grad[r * d + c];
    return A;
}

CharacteristicMap::Foot CharacteristicMap::invert(double t, const std::array<double, 3>& x) const {
    const int d = dim();
    const double tol = 1e-10 * (1.0 + norm(x, d));
    Foot f;
    f.x0 = x;
    double val[3], grad[9];
    auto residual_at = [&](const std::array<double, 3>& y, std::array<double, 3>& r) {
        spline_.evaluate(y, val, grad);
        for (int a = 0; a < d; ++a) r[a] = y[a] + t * val[a] - x[a];
        return norm(r, d);
    };
    std::array<double, 3> r{};
    double res = residual_at(f.x0, r);
    for (int it = 0; it <= 50; ++it) {
        if (res <= tol) {
            f.iterations = it;
            f.residual = res;
            for (int a = 0; a < d; ++a) f.v[a] = val[a];
            return f;
        }
        if (it == 50) break;
        Mat J = Mat::identity(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) J(i, j) += t * grad[i * d + j];
        const auto Jinv = inverse(J);
        if (!Jinv) throw NewtonFailure("characteristic inversion hit a singular Jacobian (caustic?)");
        std::array<double, 3> step{};
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) step[i] -= (*Jinv)(i, j) * r[j];
        double lambda = 1.0;
        std::array<double, 3> trial{}, rt{};
        double rest = 0.0;
        for (int k = 0; k < 30; ++k) {
            trial = f.x0;
            for (int a = 0; a < d; ++a) trial[a] += lambda * step[a];
            rest = residual_at(trial, rt);
            if (rest < res) break;
            lambda *= 0.5;
        }
        if (!(rest < res)) throw NewtonFailure("characteristic inversion stalled: no damped step reduces the residual");
        f.x0 = trial;
        r = rt;
        res = rest;
    }
    throw NewtonFailure("characteristic inversion did not converge in 50 iterations");
}

std::array<double, 3> evaluate_burgers(const CharacteristicMap& map, double t, const std::array<double, 3>& x) {
    if (t < 0.0) throw std::invalid_argument("evaluate_burgers needs t >= 0");
    if (t == 0.0) return map.u0(x);
    return map.invert(t, x).v;
}

Field burgers_velocity(const CharacteristicMap& map, const Grid& g, double t) {
    Field v = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto w = evaluate_burgers(map, t, g.center(i));
        for (int a = 0; a < g.dim; ++a) v(a, i) = w[a];
    }
    return v;
}

std::vector<std::size_t> omega_alpha(const Field& u0, double alpha) {
    const Field grad = velocity_gradient(u0);
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < u0.cells(); ++i)
        if (sym_eigen(cell_matrix(grad, i)).values[0] >= alpha) cells.push_back(i);
    return cells;
}

double grassin_remainder(const Field& u0, double t, const std::vector<std::size_t>& region) {
    if (region.empty()) throw std::invalid_argument("grassin_remainder: empty region");
    const Field grad = velocity_gradient(u0);
    const int d = u0.grid().dim;
    const Mat lead = (1.0 / (1.0 + t)) * Mat::identity(d);
    double sup = 0.0;
    for (std::size_t i : region) {
        const Mat gv = burgers_gradient(cell_matrix(grad, i), t);
        sup = std::max(sup, (1.0 + t) * (1.0 + t) * max_abs(gv - lead));
    }
    return sup;
}

}  // namespace blowup
