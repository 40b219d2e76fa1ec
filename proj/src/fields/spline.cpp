#include "blowup/spline.hpp"

#include <algorithm>
#include <cmath>

namespace blowup {

namespace {

constexpr int kPad = 2;

// Solves (c[i-1] + 4 c[i] + c[i+1]) / 6 = f[i] in place.
void prefilter_line(std::vector<double>& f, bool periodic) {
    const int n = static_cast<int>(f.size());
    if (!periodic) {
        if (n <= 2) return;  // c = f at both ends
        // unknowns c[1..n-2]; ends fixed at the samples
        const int m = n - 2;
        std::vector<double> cp(m), rhs(m);
        for (int i = 0; i < m; ++i) rhs[i] = 6.0 * f[i + 1];
        rhs[0] -= f[0];
        rhs[m - 1] -= f[n - 1];
        cp[0] = 1.0 / 4.0;
        rhs[0] /= 4.0;
        for (int i = 1; i < m; ++i) {
            const double den = 4.0 - cp[i - 1];
            cp[i] = 1.0 / den;
            rhs[i] = (rhs[i] - rhs[i - 1]) / den;
        }
        for (int i = m - 2; i >= 0; --i) rhs[i] -= cp[i] * rhs[i + 1];
        for (int i = 0; i < m; ++i) f[i + 1] = rhs[i];
        return;
    }
    // Cyclic system via Sherman-Morrison on the tridiagonal part.
    const double a = 1.0, b = 4.0, c = 1.0;
    const double gam = -b;
    std::vector<double> bb(n, b), x(n), z(n), u(n, 0.0), rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = 6.0 * f[i];
    bb[0] = b - gam;
    bb[n - 1] = b - c * a / gam;
    auto tridiag = [&](const std::vector<double>& r, std::vector<double>& out) {
        std::vector<double> cp(n);
        double den = bb[0];
        out[0] = r[0] / den;
        for (int i = 1; i < n; ++i) {
            cp[i] = c / den;
            den = bb[i] - a * cp[i];
            out[i] = (r[i] - a * out[i - 1]) / den;
        }
        for (int i = n - 2; i >= 0; --i) out[i] -= cp[i + 1] * out[i + 1];
    };
    tridiag(rhs, x);
    u[0] = gam;
    u[n - 1] = c;
    tridiag(u, z);
    const double fact = (x[0] + a * x[n - 1] / gam) / (1.0 + z[0] + a * z[n - 1] / gam);
    for (int i = 0; i < n; ++i) f[i] = x[i] - fact * z[i];
}

void bspline_weights(double t, double w[4], double dw[4]) {
    const double t2 = t * t, t3 = t2 * t, s = 1.0 - t;
    w[0] = s * s * s / 6.0;
    w[1] = (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0;
    w[2] = (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0;
    w[3] = t3 / 6.0;
    dw[0] = -0.5 * s * s;
    dw[1] = 1.5 * t2 - 2.0 * t;
    dw[2] = -1.5 * t2 + t + 0.5;
    dw[3] = 0.5 * t2;
}

}  // namespace

std::size_t CubicSpline::padded_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * pn_[1] + j) * pn_[2] + k;
}

CubicSpline::CubicSpline(const Field& f) : grid_(f.grid()), ncomp_(f.components()) {
    const Grid& g = grid_;
    for (int a = 0; a < g.dim; ++a) pn_[a] = g.n[a] + 2 * kPad;
    const std::size_t block = static_cast<std::size_t>(pn_[0]) * pn_[1] * pn_[2];
    coef_.assign(block * ncomp_, 0.0);

    for (int c = 0; c < ncomp_; ++c) {
        // unpadded working copy, prefiltered along every active axis
        std::vector<double> w(f.comp(c).begin(), f.comp(c).end());
        for (int a = 0; a < g.dim; ++a) {
            const std::size_t s = g.stride(a);
            const int n = g.n[a];
            std::vector<double> line(n);
            for (std::size_t base = 0; base < w.size(); ++base) {
                if ((base / s) % static_cast<std::size_t>(n) != 0) continue;  // line start only
                for (int i = 0; i < n; ++i) line[i] = w[base + i * s];
                prefilter_line(line, g.periodic[a]);
                for (int i = 0; i < n; ++i) w[base + i * s] = line[i];
            }
        }
        double* out = coef_.data() + c * block;
        for (std::size_t idx = 0; idx < w.size(); ++idx) {
            const auto ijk = g.unravel(idx);
            int p[3] = {0, 0, 0};
            for (int a = 0; a < g.dim; ++a) p[a] = ijk[a] + kPad;
            out[padded_index(p[0], p[1], p[2])] = w[idx];
        }
        // Ghost layers, axis by axis. Corner cells read garbage on the first
        // pass and are overwritten by the later axes from correct data.
        for (int a = 0; a < g.dim; ++a) {
            const int n = g.n[a];
            for (std::size_t pidx = 0; pidx < block; ++pidx) {
                int q[3] = {static_cast<int>(pidx / (static_cast<std::size_t>(pn_[1]) * pn_[2])),
                            static_cast<int>((pidx / pn_[2]) % pn_[1]), static_cast<int>(pidx % pn_[2])};
                const int i = q[a] - kPad;
                if (i >= 0 && i < n) continue;
                auto at = [&](int ii) {
                    int r[3] = {q[0], q[1], q[2]};
                    r[a] = ii + kPad;
                    return out[padded_index(r[0], r[1], r[2])];
                };
                double v;
                if (g.periodic[a]) {
                    v = at(((i % n) + n) % n);
                } else if (i < 0) {
                    v = at(0) + (at(0) - at(1)) * static_cast<double>(-i);
                } else {
                    v = at(n - 1) + (at(n - 1) - at(n - 2)) * static_cast<double>(i - n + 1);
                }
                out[pidx] = v;
            }
        }
    }
}

void CubicSpline::evaluate(const std::array<double, 3>& x, double* value, double* grad) const {
    const Grid& g = grid_;
    const int d = g.dim;
    int base[3] = {0, 0, 0};
    double w[3][4], dw[3][4];
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < 4; ++k) w[a][k] = (k == 0), dw[a][k] = 0.0;
    bool clamped[3] = {false, false, false};
    for (int a = 0; a < d; ++a) {
        double s = (x[a] - g.origin[a]) / g.h[a];
        const int n = g.n[a];
        if (g.periodic[a]) {
            s = std::fmod(s, static_cast<double>(n));
            if (s < 0.0) s += n;
        } else if (s < 0.0 || s > n - 1) {
            s = std::clamp(s, 0.0, static_cast<double>(n - 1));
            clamped[a] = true;
        }
        int i = static_cast<int>(std::floor(s));
        if (i >= n) i = n - 1;
        const double t = s - i;
        base[a] = i - 1 + kPad;
        bspline_weights(t, w[a], dw[a]);
        if (clamped[a])
            for (double& v : dw[a]) v = 0.0;
        for (double& v : dw[a]) v /= g.h[a];
    }
    const std::size_t block = static_cast<std::size_t>(pn_[0]) * pn_[1] * pn_[2];
    const int r1 = d > 1 ? 4 : 1, r2 = d > 2 ? 4 : 1;
    for (int c = 0; c < ncomp_; ++c) {
        const double* cf = coef_.data() + c * block;
        double v = 0.0, gx = 0.0, gy = 0.0, gz = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < r1; ++j)
                for (int k = 0; k < r2; ++k) {
                    const double cv = cf[padded_index(base[0] + i, d > 1 ? base[1] + j : 0, d > 2 ? base[2] + k : 0)];
                    v += cv * w[0][i] * w[1][j] * w[2][k];
                    gx += cv * dw[0][i] * w[1][j] * w[2][k];
                    if (d > 1) gy += cv * w[0][i] * dw[1][j] * w[2][k];
                    if (d > 2) gz += cv * w[0][i] * w[1][j] * dw[2][k];
                }
        if (value) value[c] = v;
        if (grad) {
            grad[c * d] = gx;
            if (d > 1) grad[c * d + 1] = gy;
            if (d > 2) grad[c * d + 2] = gz;
        }
    }
}

}  // namespace blowup
