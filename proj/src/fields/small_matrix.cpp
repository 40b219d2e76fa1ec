#include "blowup/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blowup {

Mat Mat::zero(int d) {
    Mat m;
    m.d = d;
    return m;
}

Mat Mat::identity(int d) {
    Mat m = zero(d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(std::initializer_list<double> v) {
    Mat m = zero(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) m(i, i) = x, ++i;
    return m;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r = x;
    for (int k = 0; k < 9; ++k) r.a[k] += y.a[k];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat r = x;
    for (int k = 0; k < 9; ++k) r.a[k] -= y.a[k];
    return r;
}

Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

Mat operator*(const Mat& x, const Mat& y) {
    Mat r = Mat::zero(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j)
            for (int k = 0; k < x.d; ++k) r(i, j) += x(i, k) * y(k, j);
    return r;
}

double trace(const Mat& m) {
    double t = 0.0;
    for (int i = 0; i < m.d; ++i) t += m(i, i);
    return t;
}

double det(const Mat& m) {
    switch (m.d) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        default:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
}

Mat transpose(const Mat& m) {
    Mat r = Mat::zero(m.d);
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) r(i, j) = m(j, i);
    return r;
}

Mat sym_part(const Mat& m) { return 0.5 * (m + transpose(m)); }

double max_abs(const Mat& m) {
    double r = 0.0;
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

double frobenius(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

std::optional<Mat> inverse(const Mat& m) {
    const double D = det(m);
    const double scale = std::pow(std::max(max_abs(m), 1e-300), m.d);
    if (D == 0.0 || std::abs(D) <= 1e-15 * scale) return std::nullopt;
    Mat r = Mat::zero(m.d);
    if (m.d == 1) {
        r(0, 0) = 1.0 / D;
    } else if (m.d == 2) {
        r(0, 0) = m(1, 1) / D;
        r(0, 1) = -m(0, 1) / D;
        r(1, 0) = -m(1, 0) / D;
        r(1, 1) = m(0, 0) / D;
    } else {
        // adjugate: inverse(i,j) = cofactor(j,i) / det
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                r(i, j) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) / D;
            }
    }
    return r;
}

namespace {

// Newton polish of a root of x^3 + b x^2 + c x + e.
double polish_cubic(double x, double b, double c, double e) {
    for (int it = 0; it < 3; ++it) {
        const double f = ((x + b) * x + c) * x + e;
        const double df = (3.0 * x + 2.0 * b) * x + c;
        if (df == 0.0) break;
        const double step = f / df;
        if (!std::isfinite(step)) break;
        x -= step;
    }
    return x;
}

std::vector<double> cubic_real_roots(double b, double c, double e) {
    // depressed cubic y^3 + p y + q with x = y - b/3
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + e;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    const double scale = std::max({std::abs(b), std::sqrt(std::abs(c)), std::cbrt(std::abs(e)), 1e-300});
    std::vector<double> roots;
    if (disc > 1e-14 * std::pow(scale, 6)) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) - shift);
    } else if (p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double th = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) - shift);
    } else {
        const double y = std::cbrt(-q);  // triple or near-triple root
        roots.assign(3, y - shift);
    }
    for (double& r : roots) r = polish_cubic(r, b, c, e);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::array<double, 3> cross(const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm3(const std::array<double, 3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Unit null vector of the symmetric 3x3 matrix B. When the null space is more
// than one-dimensional the result is also orthogonal to the vectors in `taken`.
std::array<double, 3> null_vector3(const Mat& B, const std::vector<std::array<double, 3>>& taken) {
    std::array<double, 3> best{0, 0, 0};
    double bn = 0.0;
    const std::array<double, 3> rows[3] = {{B(0, 0), B(0, 1), B(0, 2)},
                                           {B(1, 0), B(1, 1), B(1, 2)},
                                           {B(2, 0), B(2, 1), B(2, 2)}};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto c = cross(rows[i], rows[j]);
            const double cn = norm3(c);
            if (cn > bn) bn = cn, best = c;
        }
    const double scale = std::max(frobenius(B), 1e-300);
    if (bn > 1e-10 * scale * scale) {
        for (double& v : best) v /= bn;
        return best;
    }
    // Rank <= 1: any vector orthogonal to the dominant row and to vectors already chosen.
    std::array<double, 3> r{0, 0, 0};
    double rn = 0.0;
    for (const auto& row : rows)
        if (norm3(row) > rn) rn = norm3(row), r = row;
    std::vector<std::array<double, 3>> constraints = taken;
    if (rn > 1e-12 * scale) constraints.push_back(r);
    const std::array<double, 3> axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    if (constraints.empty()) return axes[0];
    if (constraints.size() >= 2) {
        auto c = cross(constraints[0], constraints[1]);
        const double cn = norm3(c);
        if (cn > 1e-12) {
            for (double& v : c) v /= cn;
            return c;
        }
    }
    const auto& w = constraints[0];
    std::array<double, 3> out{0, 0, 0};
    double on = 0.0;
    for (const auto& e : axes) {
        const auto c = cross(w, e);
        if (norm3(c) > on) on = norm3(c), out = c;
    }
    for (double& v : out) v /= on;
    return out;
}

}  // namespace

std::vector<double> real_eigenvalues(const Mat& m) {
    if (m.d == 1) return {m(0, 0)};
    if (m.d == 2) {
        const double tr = trace(m), D = det(m);
        const double half = 0.5 * tr;
        const double disc = half * half - D;
        // scale-aware zero test so repeated roots are not lost to roundoff
        const double tol = 1e-14 * std::max(half * half, std::abs(D));
        if (disc < -tol) return {};
        const double s = std::sqrt(std::max(disc, 0.0));
        // stable pair: larger-magnitude root first, other from the product
        const double r1 = half + (half >= 0.0 ? s : -s);
        const double r2 = r1 != 0.0 ? D / r1 : half - (half >= 0.0 ? s : -s);
        return {std::min(r1, r2), std::max(r1, r2)};
    }
    const double c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                      m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    return cubic_real_roots(-trace(m), c2, -det(m));
}

SymEigen sym_eigen(const Mat& m) {
    const Mat s = sym_part(m);
    SymEigen out;
    if (s.d == 1) {
        out.values[0] = s(0, 0);
        out.vectors[0] = {1.0, 0.0, 0.0};
        return out;
    }
    if (s.d == 2) {
        const double a = s(0, 0), b = s(0, 1), c = s(1, 1);
        const double mid = 0.5 * (a + c);
        const double rad = std::hypot(0.5 * (a - c), b);
        out.values[0] = mid - rad;
        out.values[1] = mid + rad;
        // eigenvector of the smaller eigenvalue via the half-angle form
        const double th = 0.5 * std::atan2(2.0 * b, a - c);  // angle of the larger one
        out.vectors[1] = {std::cos(th), std::sin(th), 0.0};
        out.vectors[0] = {-std::sin(th), std::cos(th), 0.0};
        return out;
    }
    // Symmetric 3x3: trigonometric solution.
    const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
    const double q = trace(s) / 3.0;
    std::array<double, 3> ev{};
    if (p1 <= 1e-30 * std::max(1.0, max_abs(s) * max_abs(s))) {
        ev = {s(0, 0), s(1, 1), s(2, 2)};
    } else {
        const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                          (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        const Mat B = (1.0 / p) * (s - q * Mat::identity(3));
        const double r = std::clamp(det(B) / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        ev[2] = q + 2.0 * p * std::cos(phi);
        ev[0] = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
        ev[1] = 3.0 * q - ev[0] - ev[2];
    }
    std::sort(ev.begin(), ev.end());
    std::vector<std::array<double, 3>> taken;
    for (int k = 0; k < 3; ++k) {
        out.values[k] = ev[k];
        const Mat B = s - ev[k] * Mat::identity(3);
        auto v = null_vector3(B, taken);
        // Gram-Schmidt against earlier vectors for repeated eigenvalues
        for (const auto& t : taken) {
            const double dp = v[0] * t[0] + v[1] * t[1] + v[2] * t[2];
            for (int i = 0; i < 3; ++i) v[i] -= dp * t[i];
        }
        const double vn = norm3(v);
        if (vn > 1e-12)
            for (double& x : v) x /= vn;
        out.vectors[k] = v;
        taken.push_back(v);
    }
    return out;
}

}  // namespace blowup
