#include "blowup/calculus.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "blowup/spectral.hpp"

namespace blowup {

namespace {

std::vector<double> central_partial(std::span<const double> f, const Grid& g, int axis) {
    const std::size_t N = g.size();
    const std::size_t s = g.stride(axis);
    const int n = g.n[axis];
    const double inv2h = 0.5 / g.h[axis];
    std::vector<double> df(N);
    for (std::size_t idx = 0; idx < N; ++idx) {
        const int i = static_cast<int>((idx / s) % static_cast<std::size_t>(n));
        if (g.periodic[axis]) {
            const std::size_t ip = i + 1 < n ? idx + s : idx - (n - 1) * s;
            const std::size_t im = i > 0 ? idx - s : idx + (n - 1) * s;
            df[idx] = (f[ip] - f[im]) * inv2h;
        } else if (i == 0) {
            df[idx] = n > 2 ? (-3.0 * f[idx] + 4.0 * f[idx + s] - f[idx + 2 * s]) * inv2h
                            : (f[idx + s] - f[idx]) * 2.0 * inv2h;
        } else if (i == n - 1) {
            df[idx] = n > 2 ? (3.0 * f[idx] - 4.0 * f[idx - s] + f[idx - 2 * s]) * inv2h
                            : (f[idx] - f[idx - s]) * 2.0 * inv2h;
        } else {
            df[idx] = (f[idx + s] - f[idx - s]) * inv2h;
        }
    }
    return df;
}

// Multiply spectrum by prod_a (i k_a)^{alpha_a}. Odd orders drop the Nyquist
// mode, whose derivative is not representable as a real signal.
std::vector<std::complex<double>> apply_symbol(const Spectral& sp, const std::vector<std::complex<double>>& c,
                                               const std::array<int, 3>& alpha) {
    const Grid& g = sp.grid();
    std::vector<std::complex<double>> out(c.size());
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        const auto ijk = g.unravel(idx);
        std::complex<double> sym = 1.0;
        for (int a = 0; a < g.dim; ++a) {
            if (alpha[a] == 0) continue;
            if (alpha[a] % 2 == 1 && sp.is_nyquist(a, ijk[a])) {
                sym = 0.0;
                break;
            }
            const std::complex<double> ik(0.0, sp.wavenumber(a, ijk[a]));
            sym *= std::pow(ik, alpha[a]);
        }
        out[idx] = c[idx] * sym;
    }
    return out;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

void enumerate_alphas(int dim, int order, std::vector<std::array<int, 3>>& out) {
    for (int a0 = order; a0 >= 0; --a0) {
        if (dim == 1) {
            if (a0 == order) out.push_back({a0, 0, 0});
            continue;
        }
        for (int a1 = order - a0; a1 >= 0; --a1) {
            const int a2 = order - a0 - a1;
            if (dim == 2 && a2 != 0) continue;
            out.push_back({a0, a1, a2});
        }
    }
}

void warn_if_truncated(const Field& f, const char* what) {
    if (!f.grid().all_periodic() && touches_boundary(f))
        spdlog::warn("{}: field support touches a non-periodic boundary; truncation is not exact", what);
}

}  // namespace

std::vector<double> partial(std::span<const double> f, const Grid& g, int axis, DiffMethod method) {
    if (axis < 0 || axis >= g.dim) throw std::invalid_argument("partial: axis out of range");
    if (method == DiffMethod::central) return central_partial(f, g, axis);
    if (!g.periodic[axis]) throw std::invalid_argument("spectral differentiation needs a periodic axis");
    Spectral sp(g);
    std::array<int, 3> alpha{0, 0, 0};
    alpha[axis] = 1;
    return sp.inverse_real(apply_symbol(sp, sp.forward(f), alpha));
}

Field gradient(const Field& f, DiffMethod method) {
    const Grid& g = f.grid();
    if (f.kind() == FieldKind::tensor) throw std::invalid_argument("gradient of a tensor field is not supported");
    if (method == DiffMethod::spectral && !g.all_periodic())
        throw std::invalid_argument("spectral gradient requires a periodic grid on every axis");
    Field out(g, f.kind() == FieldKind::scalar ? FieldKind::vector : FieldKind::tensor);
    const int d = g.dim;
    if (method == DiffMethod::spectral) {
        Spectral sp(g);
        for (int c = 0; c < f.components(); ++c) {
            const auto spec = sp.forward(f.comp(c));
            for (int a = 0; a < d; ++a) {
                std::array<int, 3> alpha{0, 0, 0};
                alpha[a] = 1;
                const auto v = sp.inverse_real(apply_symbol(sp, spec, alpha));
                std::copy(v.begin(), v.end(), out.comp(c * d + a).begin());
            }
        }
        return out;
    }
    for (int c = 0; c < f.components(); ++c)
        for (int a = 0; a < d; ++a) {
            const auto v = central_partial(f.comp(c), g, a);
            std::copy(v.begin(), v.end(), out.comp(c * d + a).begin());
        }
    return out;
}

DiffMethod default_method(const Grid& g) { return g.all_periodic() ? DiffMethod::spectral : DiffMethod::central; }

Field velocity_gradient(const Field& u) { return gradient(u, default_method(u.grid())); }

std::vector<MultiPartial> spectral_partials(std::span<const double> f, const Grid& g, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
    Spectral sp(g);
    const auto spec = sp.forward(f);
    std::vector<std::array<int, 3>> alphas;
    enumerate_alphas(g.dim, order, alphas);
    std::vector<MultiPartial> out;
    out.reserve(alphas.size());
    for (const auto& al : alphas) {
        MultiPartial p;
        p.alpha = al;
        p.multiplicity = factorial(order) / (factorial(al[0]) * factorial(al[1]) * factorial(al[2]));
        p.values = order == 0 ? std::vector<double>(f.begin(), f.end()) : sp.inverse_real(apply_symbol(sp, spec, al));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<double> derivative_norm_sq(const Field& f, int order) {
    warn_if_truncated(f, "derivative_norm_sq");
    std::vector<double> acc(f.cells(), 0.0);
    for (int c = 0; c < f.components(); ++c)
        for (const auto& p : spectral_partials(f.comp(c), f.grid(), order))
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p.multiplicity * p.values[i] * p.values[i];
    return acc;
}

namespace {

// sum_k |k|^{2j} |F_k|^2 for each j in [0, m], with F the unnormalised DFT.
std::vector<double> weighted_spectral_sums(const Field& f, int m) {
    const Grid& g = f.grid();
    Spectral sp(g);
    std::vector<double> sums(m + 1, 0.0);
    for (int c = 0; c < f.components(); ++c) {
        const auto spec = sp.forward(f.comp(c));
        for (std::size_t idx = 0; idx < spec.size(); ++idx) {
            const auto ijk = g.unravel(idx);
            double k2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                const double k = sp.wavenumber(a, ijk[a]);
                k2 += k * k;
            }
            const double p = std::norm(spec[idx]);
            double w = 1.0;
            for (int j = 0; j <= m; ++j) {
                sums[j] += w * p;
                w *= k2;
            }
        }
    }
    const double n = static_cast<double>(g.size());
    for (double& s : sums) s *= g.volume() / (n * n);
    return sums;
}

}  // namespace

double seminorm(const Field& f, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
    warn_if_truncated(f, "seminorm");
    return std::sqrt(weighted_spectral_sums(f, order)[order]);
}

double sobolev_norm(const Field& f, int m) {
    if (m < 0) throw std::invalid_argument("Sobolev index must be non-negative");
    warn_if_truncated(f, "sobolev_norm");
    const auto sums = weighted_spectral_sums(f, m);
    double total = 0.0;
    for (double s : sums) total += s;
    return std::sqrt(total);
}

double derivative_sobolev_norm(const Field& f, int order, int m) {
    if (order < 0 || m < 0) throw std::invalid_argument("derivative and Sobolev orders must be non-negative");
    warn_if_truncated(f, "derivative_sobolev_norm");
    const auto sums = weighted_spectral_sums(f, order + m);
    double total = 0.0;
    for (int k = order; k <= order + m; ++k) total += sums[k];
    return std::sqrt(total);
}

double linf_norm(const Field& f) {
    double r = 0.0;
    for (double v : f.values()) r = std::max(r, std::abs(v));
    return r;
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.grid().cell_volume());
}

double integrate(std::span<const double> f, const Grid& g) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * g.cell_volume();
}

bool touches_boundary(const Field& f, int margin, double tol) {
    const Grid& g = f.grid();
    for (std::size_t idx = 0; idx < f.cells(); ++idx) {
        const auto ijk = g.unravel(idx);
        bool edge = false;
        for (int a = 0; a < g.dim && !edge; ++a)
            edge = !g.periodic[a] && (ijk[a] < margin || ijk[a] >= g.n[a] - margin);
        if (!edge) continue;
        for (int c = 0; c < f.components(); ++c)
            if (std::abs(f(c, idx)) > tol) return true;
    }
    return false;
}

}  // namespace blowup
