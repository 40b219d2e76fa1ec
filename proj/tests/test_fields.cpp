#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "blowup/calculus.hpp"
#include "blowup/interpolation_lemmas.hpp"
#include "blowup/small_matrix.hpp"
#include "blowup/snapshot_io.hpp"
#include "blowup/spline.hpp"
#include "blowup/symmetrize.hpp"

using namespace blowup;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

FluidState uniform_state(const Grid& g, double rho, double gamma) {
    FluidState s{Field::scalar(g), Field::vector(g), gamma};
    s.rho.fill(rho);
    return s;
}

// Compact C-infinity bump exp(-1/(1-r^2)) on |x-c| < w; reference values.
double bump(double r) { return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

Field bump_field(const Grid& g, double width, double amp) {
    Field f = Field::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) r2 += x[a] * x[a];
        f[i] = amp * bump(std::sqrt(r2) / width);
    }
    return f;
}

}  // namespace

TEST_CASE("grid geometry and indexing") {
    const Grid g = Grid::box(2, {4, 3, 1}, {0, -1, 0}, {2, 2, 0}, true);
    CHECK(g.size() == 12);
    CHECK(g.h[0] == Approx(0.5));
    CHECK(g.h[1] == Approx(1.0));
    CHECK(g.extent(0) == Approx(2.0));
    CHECK(g.origin[0] == Approx(0.25));
    CHECK(g.stride(1) == 1);
    CHECK(g.stride(0) == 3);
    const auto ijk = g.unravel(g.index(2, 1));
    CHECK(ijk[0] == 2);
    CHECK(ijk[1] == 1);
    CHECK(g.neighbour(g.index(3, 0), 0, 1) == g.index(0, 0));
    CHECK_THROWS(Grid::box1d(1, 0, 1, true));
    Grid bad = g;
    bad.h[1] = 0.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("to_symmetrized closed forms") {
    const Grid g = Grid::box1d(8, 0, 1, true);
    auto s = to_symmetrized(uniform_state(g, 1.0, 3.0));
    CHECK(s.c1 == 1.0);
    for (double v : s.pi.values()) CHECK(v == Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));

    auto vac = to_symmetrized(uniform_state(g, 0.0, 2.0));
    for (double v : vac.pi.values()) CHECK(v == 0.0);

    auto st = uniform_state(g, 1.0, 2.0);
    st.rho[3] = 4.0;
    auto s2 = to_symmetrized(st);
    CHECK(s2.pi[3] == Approx(std::sqrt(1.0 / 8.0) * 2.0).epsilon(1e-14));
    CHECK(s2.pi[3] == Approx(0.70710678).epsilon(1e-7));

    CHECK_THROWS(to_symmetrized(uniform_state(g, 1.0, 1.0)));
}

TEST_CASE("symmetrization round trip and inverse") {
    const Grid g = Grid::box(2, {16, 8, 1}, {0, 0, 0}, {1, 1, 0}, true);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(1e-8, 5.0);
    for (double gamma : {1.4, 2.0, 3.0, 5.0 / 3.0}) {
        FluidState st = uniform_state(g, 1.0, gamma);
        for (double& r : st.rho.values()) r = U(rng);
        const auto back = from_symmetrized(to_symmetrized(st));
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(back.rho[i] - st.rho[i]) <= 1e-12 * st.rho[i]);
    }
    SymmetrizedState s{Field::scalar(g), Field::vector(g), 3.0, 1.0};
    s.pi.fill(1.0 / std::sqrt(6.0));
    const auto one = from_symmetrized(s);
    for (double r : one.rho.values()) CHECK(r == Approx(1.0).epsilon(1e-14));
    s.pi.fill(0.0);
    const auto vacuum = from_symmetrized(s);
    for (double r : vacuum.rho.values()) CHECK(r == 0.0);
    s.pi[0] = -1.0;
    CHECK_THROWS(from_symmetrized(s));
}

TEST_CASE("tiny negative density is clamped to vacuum") {
    const Grid g = Grid::box1d(4, 0, 1, true);
    FluidState st = uniform_state(g, 1.0, 2.0);
    st.rho[1] = 5e-15;
    CHECK(to_symmetrized(st).pi[1] == 0.0);
}

TEST_CASE("gradient of linear, constant and Fourier fields") {
    const Grid g = Grid::box1d(64, 0.0, 1.0, false);
    Field f = Field::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.center(i)[0];
    const Field df = gradient(f, DiffMethod::central);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(df[i] - 1.0) <= 1e-12);
    CHECK_THROWS(gradient(f, DiffMethod::spectral));

    const double L = 3.0;
    const Grid gp = Grid::box1d(48, 0.0, L, true);
    Field s = Field::scalar(gp), c = Field::scalar(gp);
    c.fill(2.5);
    for (std::size_t i = 0; i < gp.size(); ++i) s[i] = std::sin(2 * pi * gp.center(i)[0] / L);
    const Field ds = gradient(s, DiffMethod::spectral);
    for (std::size_t i = 0; i < gp.size(); ++i)
        CHECK(std::abs(ds[i] - (2 * pi / L) * std::cos(2 * pi * gp.center(i)[0] / L)) <= 1e-10);
    for (auto m : {DiffMethod::central, DiffMethod::spectral}) {
        const Field dc = gradient(c, m);
        for (double v : dc.values()) CHECK(std::abs(v) <= 1e-13);
    }
}

TEST_CASE("spectral gradient of a 2D mode and tensor layout") {
    const Grid g = Grid::box(2, {32, 24, 1}, {0, 0, 0}, {2 * pi, 2 * pi, 0}, true);
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        u(0, i) = std::sin(3 * x[1]);
        u(1, i) = std::cos(2 * x[0]);
    }
    const Field du = gradient(u, DiffMethod::spectral);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        CHECK(std::abs(du(0, i)) <= 1e-10);                               // d_1 u_1
        CHECK(std::abs(du(1, i) - 3 * std::cos(3 * x[1])) <= 1e-10);      // d_2 u_1
        CHECK(std::abs(du(2, i) + 2 * std::sin(2 * x[0])) <= 1e-10);      // d_1 u_2
        CHECK(std::abs(du(3, i)) <= 1e-10);                               // d_2 u_2
    }
}

TEST_CASE("sobolev norms") {
    const Grid g = Grid::box1d(64, 0.0, 1.0, true);
    Field f = Field::scalar(g);
    CHECK(sobolev_norm(f, 3) == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(2 * pi * g.center(i)[0]);
    CHECK(sobolev_norm(f, 1) == Approx(std::sqrt(0.5 + 4 * pi * pi / 2)).epsilon(1e-12));
    CHECK(sobolev_norm(f, 1) == Approx(4.4990).epsilon(1e-4));
    CHECK(seminorm(f, 2) == Approx(4 * pi * pi / std::sqrt(2.0)).epsilon(1e-12));
    for (int m = 0; m < 5; ++m) CHECK(sobolev_norm(f, m + 1) >= sobolev_norm(f, m));
    CHECK_THROWS(sobolev_norm(f, -1));

    // 2D: multiplicity-weighted pointwise sum agrees with Parseval
    const Grid g2 = Grid::box(2, {48, 40, 1}, {-3, -3, 0}, {3, 3, 0}, true);
    const Field b = bump_field(g2, 2.0, 1.0);
    for (int k = 0; k <= 3; ++k)
        CHECK(std::sqrt(integrate(derivative_norm_sq(b, k), g2)) == Approx(seminorm(b, k)).epsilon(1e-9));
}

TEST_CASE("L2 norm scales like lambda^{1/2} under 1D dilation") {
    const Grid g = Grid::box1d(2048, -8.0, 8.0, true);
    const Field f1 = bump_field(g, 1.0, 1.0);
    const Field f2 = bump_field(g, 2.0, 1.0);
    CHECK(l2_norm(f2) == Approx(std::sqrt(2.0) * l2_norm(f1)).epsilon(1e-8));
}

TEST_CASE("linf and l2 norms") {
    const Grid g = Grid::box(2, {4, 5, 1}, {0, 0, 0}, {2, 1, 0}, true);
    Field f = Field::scalar(g);
    CHECK(linf_norm(f) == 0.0);
    CHECK(l2_norm(f) == 0.0);
    f.fill(-3.0);
    CHECK(linf_norm(f) == 3.0);
    CHECK(l2_norm(f) == Approx(3.0 * std::sqrt(g.volume())));
    f.fill(0.0);
    f[7] = -2.0;
    CHECK(l2_norm(f) == Approx(2.0 * std::sqrt(g.cell_volume())));
}

TEST_CASE("boundary contact detection on truncated boxes") {
    const Grid g = Grid::box1d(64, -4.0, 4.0, false);
    CHECK_FALSE(touches_boundary(bump_field(g, 2.0, 1.0)));
    Field f = Field::scalar(g);
    f.fill(1.0);
    CHECK(touches_boundary(f));
}

TEST_CASE("closed-form eigenvalues") {
    CHECK(real_eigenvalues(Mat::diag({-2.0}))[0] == -2.0);
    auto e2 = real_eigenvalues(Mat::diag({3.0, -1.0}));
    CHECK(e2[0] == Approx(-1.0));
    CHECK(e2[1] == Approx(3.0));
    Mat rot = Mat::zero(2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    CHECK(real_eigenvalues(rot).empty());

    // 3x3 with known spectrum: Q diag(-2, 0.5, 4) Q^T for a rotation Q,
    // then a non-symmetric similarity transform.
    const double c = std::cos(0.7), s = std::sin(0.7);
    Mat Q = Mat::zero(3);
    Q(0, 0) = c, Q(0, 1) = -s, Q(1, 0) = s, Q(1, 1) = c, Q(2, 2) = 1.0;
    const Mat A = Q * Mat::diag({-2.0, 0.5, 4.0}) * transpose(Q);
    auto e3 = real_eigenvalues(A);
    REQUIRE(e3.size() == 3);
    CHECK(e3[0] == Approx(-2.0).epsilon(1e-12));
    CHECK(e3[1] == Approx(0.5).epsilon(1e-12));
    CHECK(e3[2] == Approx(4.0).epsilon(1e-12));
    Mat P = Mat::identity(3);
    P(0, 2) = 0.3, P(1, 0) = -0.2;
    const Mat B = P * Mat::diag({-1.5, 2.0, 2.5}) * *inverse(P);
    auto eb = real_eigenvalues(B);
    REQUIRE(eb.size() == 3);
    CHECK(eb[0] == Approx(-1.5).epsilon(1e-10));
    CHECK(eb[2] == Approx(2.5).epsilon(1e-10));
    // one real root and a complex pair
    Mat C = Mat::zero(3);
    C(0, 1) = -1, C(1, 0) = 1, C(2, 2) = -0.25;
    auto ec = real_eigenvalues(C);
    REQUIRE(ec.size() == 1);
    CHECK(ec[0] == Approx(-0.25));
    CHECK(real_eigenvalues(Mat::diag({-1.0, -1.0, -1.0}))[2] == Approx(-1.0));
}

TEST_CASE("symmetric eigen-decomposition returns orthonormal eigenvectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int d = 1; d <= 3; ++d)
        for (int trial = 0; trial < 200; ++trial) {
            Mat A = Mat::zero(d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) A(i, j) = U(rng);
            const auto E = sym_eigen(A);
            const Mat S = sym_part(A);
            for (int k = 0; k < d; ++k) {
                double nrm = 0.0;
                for (int i = 0; i < d; ++i) {
                    double r = -E.values[k] * E.vectors[k][i];
                    for (int j = 0; j < d; ++j) r += S(i, j) * E.vectors[k][j];
                    CHECK(std::abs(r) <= 1e-10);
                    nrm += E.vectors[k][i] * E.vectors[k][i];
                }
                CHECK(nrm == Approx(1.0).epsilon(1e-10));
                if (k > 0) CHECK(E.values[k] >= E.values[k - 1]);
            }
        }
    const auto deg = sym_eigen(Mat::diag({2.0, 2.0, -1.0}));
    CHECK(deg.values[0] == Approx(-1.0));
    CHECK(std::abs(deg.vectors[0][2]) == Approx(1.0));
}

TEST_CASE("matrix inverse") {
    Mat A = Mat::zero(3);
    A(0, 0) = 2, A(0, 1) = 1, A(1, 1) = 3, A(1, 2) = -1, A(2, 0) = 0.5, A(2, 2) = 1;
    const Mat I = A * *inverse(A);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(I(i, j) == Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    CHECK_FALSE(inverse(Mat::diag({1.0, 0.0})).has_value());
}

TEST_CASE("cubic spline interpolates nodes and tracks smooth data") {
    const Grid g = Grid::box(2, {40, 32, 1}, {0, 0, 0}, {2 * pi, 2 * pi, 0}, true);
    Field f = Field::scalar(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        f[i] = std::sin(x[0]) * std::cos(x[1]);
    }
    const CubicSpline sp(f);
    double v, gr[2];
    for (std::size_t i = 0; i < g.size(); i += 37) {
        sp.evaluate(g.center(i), &v, gr);
        CHECK(v == Approx(f[i]).epsilon(1e-12));
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-10, 10);
    for (int k = 0; k < 50; ++k) {
        std::array<double, 3> x{U(rng), U(rng), 0};
        sp.evaluate(x, &v, gr);
        CHECK(std::abs(v - std::sin(x[0]) * std::cos(x[1])) <= 2e-4);
        CHECK(std::abs(gr[0] - std::cos(x[0]) * std::cos(x[1])) <= 2e-3);
        CHECK(std::abs(gr[1] + std::sin(x[0]) * std::sin(x[1])) <= 2e-3);
    }
    // non-periodic: linear data is reproduced exactly, including near the edge
    const Grid gl = Grid::box1d(20, -1.0, 1.0, false);
    Field l = Field::scalar(gl);
    for (std::size_t i = 0; i < gl.size(); ++i) l[i] = 3.0 * gl.center(i)[0] - 1.0;
    const CubicSpline sl(l);
    for (double x : {-0.95, -0.3, 0.0, 0.77, 0.95}) {
        sl.evaluate({x, 0, 0}, &v, gr);
        CHECK(v == Approx(3.0 * x - 1.0).epsilon(1e-12));
        CHECK(gr[0] == Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("interpolation lemma ratios") {
    const Grid g = Grid::box(2, {96, 96, 1}, {-6, -6, 0}, {6, 6, 0}, true);
    Field zero = Field::scalar(g);
    const auto r0 = check_interpolation_lemmas(zero, zero);
    CHECK_FALSE(r0.ratio42.has_value());
    CHECK_FALSE(r0.ratio43.has_value());

    const Field psi = bump_field(g, 2.5, 1.0);
    Field phi = bump_field(g, 2.0, 0.5);
    const auto r = check_interpolation_lemmas(psi, phi);
    REQUIRE(r.ratio42.has_value());
    REQUIRE(r.ratio43.has_value());
    CHECK(std::isfinite(*r.ratio42));
    CHECK(*r.ratio42 > 0.0);
    CHECK(std::isfinite(*r.ratio43));

    // dilation by 2 with an amplitude rescale (both sides scale alike)
    const Grid g2 = Grid::box(2, {96, 96, 1}, {-12, -12, 0}, {12, 12, 0}, true);
    const Field psi2 = bump_field(g2, 5.0, 2.0);
    const auto r2 = check_interpolation_lemmas(psi2, psi2);
    CHECK(*r2.ratio42 == Approx(*r.ratio42).epsilon(1e-6));
}

TEST_CASE("snapshot round trip in both formats") {
    const Grid g = Grid::box(2, {5, 3, 1}, {-1, 0, 0}, {1, 0.75, 0}, true);
    Field rho = Field::scalar(g);
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        rho[i] = 1.0 / (1.0 + i);
        u(0, i) = std::sin(0.1 * i);
        u(1, i) = -1e-300 * i;
    }
    const auto dir = std::filesystem::temp_directory_path() / "blowup_snapshot_test";
    std::filesystem::create_directories(dir);
    for (auto fmt : {SnapshotFormat::csv, SnapshotFormat::binary}) {
        const auto p = dir / (fmt == SnapshotFormat::csv ? "s.csv" : "s.bin");
        write_snapshot(p, {&rho, &u}, fmt);
        const auto back = read_snapshot(p);
        REQUIRE(back.size() == 3);
        CHECK(back[0].grid().h[1] == g.h[1]);
        CHECK(back[0].grid().origin[0] == g.origin[0]);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(back[0][i] == rho[i]);
            CHECK(back[1][i] == u(0, i));
            CHECK(back[2][i] == u(1, i));
        }
    }
    CHECK(snapshot_header(g, 3).rfind("2 5 3 ", 0) == 0);
    std::filesystem::remove_all(dir);
}
