#include "scheme.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/symmetrize.hpp"

namespace blowup::detail {

namespace {

// Monotonized-central limited slope.
double mc_slope(double dm, double dp) {
    if (dm * dp <= 0.0) return 0.0;
    const double s = dm > 0.0 ? 1.0 : -1.0;
    return s * std::min({2.0 * std::abs(dm), 2.0 * std::abs(dp), 0.5 * std::abs(dm + dp)});
}

}  // namespace

PointState make_point(double rho, const double* m, int d, double gamma) {
    PointState s;
    s.rho = rho;
    double ke = 0.0;
    for (int k = 0; k < d; ++k) {
        s.m[k] = m[k];
        s.u[k] = rho > 0.0 ? m[k] / rho : 0.0;
        ke += s.u[k] * m[k];
    }
    s.p = rho > 0.0 ? std::pow(rho, gamma) : 0.0;
    s.c = rho > 0.0 ? std::sqrt(gamma * s.p / rho) : 0.0;
    s.eta = 0.5 * ke + s.p / (gamma - 1.0);
    return s;
}

PointState make_point_primitive(double rho, const double* u, int d, double gamma) {
    double m[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < d; ++k) m[k] = rho > 0.0 ? rho * u[k] : 0.0;
    return make_point(rho, m, d, gamma);
}

void rusanov(const PointState& L, const PointState& R, int axis, int d, double* F, double& Q) {
    const double aL = std::abs(L.u[axis]) + L.c, aR = std::abs(R.u[axis]) + R.c;
    const double alpha = std::max(aL, aR);
    F[0] = 0.5 * (L.m[axis] + R.m[axis]) - 0.5 * alpha * (R.rho - L.rho);
    for (int k = 0; k < d; ++k) {
        double fl = L.m[axis] * L.u[k], fr = R.m[axis] * R.u[k];
        if (k == axis) fl += L.p, fr += R.p;
        F[1 + k] = 0.5 * (fl + fr) - 0.5 * alpha * (R.m[k] - L.m[k]);
    }
    const double qL = (L.eta + L.p) * L.u[axis], qR = (R.eta + R.p) * R.u[axis];
    Q = 0.5 * (qL + qR) - 0.5 * alpha * (R.eta - L.eta);
}

Sweeper::Sweeper(const Grid& g, double gamma, Reconstruction rec) : g_(g), gamma_(gamma), rec_(rec) {
    const std::size_t N = g.size();
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t s = g.stride(a);
        const auto n = static_cast<std::size_t>(g.n[a]);
        for (std::size_t idx = 0; idx < N; ++idx)
            if ((idx / s) % n == 0) line_starts_[a].push_back(idx);
    }
    cells_.resize(N);
}

void Sweeper::operator()(const std::vector<double>& U, std::vector<double>& dU, std::vector<double>* dQ) {
    const int d = g_.dim;
    const std::size_t N = g_.size();
    dU.assign((d + 1) * N, 0.0);
    if (dQ) dQ->assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        double m[3] = {0.0, 0.0, 0.0};
        for (int k = 0; k < d; ++k) m[k] = U[(1 + k) * N + i];
        cells_[i] = make_point(U[i], m, d, gamma_);
    }

    for (int a = 0; a < d; ++a) {
        const int n = g_.n[a];
        const std::size_t s = g_.stride(a);
        const double inv_h = 1.0 / g_.h[a];
        const bool periodic = g_.periodic[a];
        std::vector<const PointState*> line(n + 4);
        std::vector<PointState> faceL(n + 1), faceR(n + 1);
        std::vector<double> F((n + 1) * (d + 1));
        std::vector<double> Q(n + 1);
        for (std::size_t base : line_starts_[a]) {
            for (int j = -2; j < n + 2; ++j) {
                int jj = j;
                if (periodic) jj = ((j % n) + n) % n;
                else jj = std::clamp(j, 0, n - 1);
                line[j + 2] = &cells_[base + static_cast<std::size_t>(jj) * s];
            }
            // face k sits between line cells k-1 and k (k = 0..n)
            for (int k = 0; k <= n; ++k) {
                const PointState& Lc = *line[k + 1];
                const PointState& Rc = *line[k + 2];
                if (rec_ == Reconstruction::none) {
                    rusanov(Lc, Rc, a, d, &F[k * (d + 1)], Q[k]);
                    continue;
                }
                const PointState& LL = *line[k];
                const PointState& RR = *line[k + 3];
                double wl[4], wr[4];
                const double sl = mc_slope(Lc.rho - LL.rho, Rc.rho - Lc.rho);
                const double sr = mc_slope(Rc.rho - Lc.rho, RR.rho - Rc.rho);
                wl[0] = Lc.rho + 0.5 * sl;
                wr[0] = Rc.rho - 0.5 * sr;
                for (int c = 0; c < d; ++c) {
                    wl[1 + c] = Lc.u[c] + 0.5 * mc_slope(Lc.u[c] - LL.u[c], Rc.u[c] - Lc.u[c]);
                    wr[1 + c] = Rc.u[c] - 0.5 * mc_slope(Rc.u[c] - Lc.u[c], RR.u[c] - Rc.u[c]);
                }
                faceL[k] = make_point_primitive(std::max(wl[0], 0.0), wl + 1, d, gamma_);
                faceR[k] = make_point_primitive(std::max(wr[0], 0.0), wr + 1, d, gamma_);
                rusanov(faceL[k], faceR[k], a, d, &F[k * (d + 1)], Q[k]);
            }
            for (int i = 0; i < n; ++i) {
                const std::size_t idx = base + static_cast<std::size_t>(i) * s;
                for (int c = 0; c <= d; ++c)
                    dU[c * N + idx] -= (F[(i + 1) * (d + 1) + c] - F[i * (d + 1) + c]) * inv_h;
                if (dQ) (*dQ)[idx] += (Q[i + 1] - Q[i]) * inv_h;
            }
        }
    }
}

std::vector<double> pack(const FluidState& s) {
    const std::size_t N = s.rho.cells();
    const int d = s.rho.grid().dim;
    std::vector<double> U((d + 1) * N);
    for (std::size_t i = 0; i < N; ++i) {
        U[i] = s.rho[i];
        for (int k = 0; k < d; ++k) U[(1 + k) * N + i] = s.rho[i] * s.u(k, i);
    }
    return U;
}

FluidState unpack(const std::vector<double>& U, const Grid& g, double gamma) {
    FluidState s{Field::scalar(g), Field::vector(g), gamma};
    const std::size_t N = g.size();
    for (std::size_t i = 0; i < N; ++i) {
        const double r = U[i];
        s.rho[i] = r;
        for (int k = 0; k < g.dim; ++k) s.u(k, i) = r > 0.0 ? U[(1 + k) * N + i] / r : 0.0;
    }
    return s;
}

bool apply_vacuum_floor(std::vector<double>& U, const Grid& g, double t) {
    const std::size_t N = g.size();
    bool clamped = false;
    for (std::size_t i = 0; i < N; ++i) {
        const double r = U[i];
        if (!std::isfinite(r)) throw SimulationAbort("non-finite density", t);
        if (r < -kVacuumFloor) throw SimulationAbort("negative density " + std::to_string(r), t);
        if (r < kVacuumFloor && (r != 0.0 || [&] {
                for (int k = 0; k < g.dim; ++k)
                    if (U[(1 + k) * N + i] != 0.0) return true;
                return false;
            }())) {
            U[i] = 0.0;
            for (int k = 0; k < g.dim; ++k) U[(1 + k) * N + i] = 0.0;
            clamped = true;
        }
    }
    return clamped;
}

std::vector<double> cell_entropy(const std::vector<double>& U, const Grid& g, double gamma) {
    const std::size_t N = g.size();
    std::vector<double> eta(N);
    for (std::size_t i = 0; i < N; ++i) {
        double m[3] = {0.0, 0.0, 0.0};
        for (int k = 0; k < g.dim; ++k) m[k] = U[(1 + k) * N + i];
        eta[i] = make_point(U[i], m, g.dim, gamma).eta;
    }
    return eta;
}

}  // namespace blowup::detail
