#include "doctest.h"

#include <cmath>
#include <random>

#include "blowup/burgers.hpp"
#include "blowup/initial_data.hpp"

using namespace blowup;
using doctest::Approx;

namespace {

Field linear_velocity_1d(const Grid& g, double slope) {
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = slope * g.center(i)[0];
    return u;
}

Field compressive(const Grid& g, double lambda0) {
    FamilyParams p;
    p.kind = "compressive_1d";
    p.lambda0 = lambda0;
    return standard_family(g, p).state.u;
}

}  // namespace

TEST_CASE("burgers_gradient closed forms") {
    CHECK(burgers_gradient(Mat::diag({-1.0}), 0.5)(0, 0) == Approx(-2.0));
    const Mat I = burgers_gradient(Mat::identity(3), 1.7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(I(i, j) == Approx(i == j ? 1.0 / 2.7 : 0.0));
    const Mat D = burgers_gradient(Mat::diag({-1.0, 1.0}), 0.9);
    CHECK(D(0, 0) == Approx(-10.0));
    CHECK(D(1, 1) == Approx(1.0 / 1.9));
    CHECK(D(1, 1) == Approx(0.5263).epsilon(1e-4));
    try {
        burgers_gradient(Mat::diag({-1.0, 0.5}), 1.0);
        FAIL("expected BlowupReached");
    } catch (const BlowupReached& e) {
        CHECK(e.t_critical == Approx(1.0));
    }
}

TEST_CASE("blow-up time of linear and example data") {
    const Grid g = Grid::box1d(64, -1.0, 1.0, false);
    const auto v = burgers_blowup_time(linear_velocity_1d(g, -1.0));
    CHECK(v.blows_up);
    CHECK(v.t_star == Approx(1.0).epsilon(1e-13));
    CHECK(v.lambda == Approx(-1.0).epsilon(1e-13));
    const auto e = burgers_blowup_time(linear_velocity_1d(g, 1.0));
    CHECK_FALSE(e.blows_up);
    CHECK(std::isinf(e.t_star));

    // lambda = -1 is attained on the whole segment |x1| <= R of the x1 axis
    // (and its mirror), the origin included, so only the value is pinned down.
    const Grid g2 = Grid::box(2, {511, 511, 1}, {-80, -80, 0}, {80, 80, 0}, true);
    const auto ex1 = burgers_blowup_time(example1(g2, 8.0, 6));
    CHECK(ex1.lambda == Approx(-1.0).epsilon(1e-4));
    CHECK(ex1.t_star == Approx(1.0).epsilon(1e-4));
    CHECK(std::min(std::abs(ex1.x_star[0]), std::abs(ex1.x_star[1])) < 1e-9);
}

TEST_CASE("blow-up time is translation invariant and scales like 1/c") {
    const Grid g = Grid::box1d(512, -8.0, 8.0, true);
    const Field u = compressive(g, 1.3);
    const auto base = burgers_blowup_time(u);
    Field shifted = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) shifted[(i + 37) % g.size()] = u[i];
    CHECK(burgers_blowup_time(shifted).t_star == Approx(base.t_star).epsilon(1e-12));
    for (double c : {0.5, 2.0, 7.0}) {
        Field s = u;
        for (double& x : s.values()) x *= c;
        CHECK(burgers_blowup_time(s).t_star == Approx(base.t_star / c).epsilon(1e-12));
    }
    CHECK(base.t_star == Approx(1.0 / 1.3).epsilon(1e-8));
}

TEST_CASE("non-symmetric gradients are counted") {
    const Grid g = Grid::box(2, {16, 16, 1}, {-1, -1, 0}, {1, 1, 0}, false);
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.center(i);
        u(0, i) = -x[0] + 0.5 * x[1];  // grad = [[-1, .5], [0, 1]]
        u(1, i) = x[1];
    }
    const auto v = burgers_blowup_time(u);
    CHECK(v.asymmetric_cells == g.size());
    CHECK(v.lambda == Approx(-1.0));
    CHECK(v.sym_lambda < -1.0);  // the symmetric part is more negative
}

TEST_CASE("evaluate_burgers on linear data") {
    const Grid g = Grid::box1d(200, -4.0, 4.0, false);
    const CharacteristicMap up(linear_velocity_1d(g, 1.0));
    for (double t : {0.0, 0.3, 2.0})
        for (double x : {-1.0, 0.25, 1.5})
            CHECK(evaluate_burgers(up, t, {x, 0, 0})[0] == Approx(x / (1.0 + t)).epsilon(1e-10));
    const CharacteristicMap down(linear_velocity_1d(g, -1.0));
    const auto foot = down.invert(0.5, {0.25, 0, 0});
    CHECK(foot.x0[0] == Approx(0.5).epsilon(1e-10));
    CHECK(foot.v[0] == Approx(-0.5).epsilon(1e-10));
    CHECK(evaluate_burgers(down, 0.0, {0.7, 0, 0})[0] == Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("Newton inversion residual and failure near caustics") {
    const Grid g = Grid::box1d(1024, -8.0, 8.0, true);
    const CharacteristicMap map(compressive(g, 1.0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> X(-7.5, 7.5);
    for (int k = 0; k < 100; ++k) {
        const double x = X(rng);
        const auto f = map.invert(0.6, {x, 0, 0});
        CHECK(f.residual <= 1e-10 * (1.0 + std::abs(x)));
        CHECK(f.iterations <= 50);
    }
    // at t* the whole plateau collapses onto x = 0: other points have no foot there
    CHECK_THROWS_AS(map.invert(1.0, {0.3, 0, 0}), NewtonFailure);
}

TEST_CASE("burgers_gradient matches finite differences of evaluate_burgers") {
    const Grid g = Grid::box1d(1024, -8.0, 8.0, true);
    const CharacteristicMap map(compressive(g, 1.0));
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> X(-7.0, 7.0), T(0.0, 0.9);
    const double h = 1e-4;
    for (int k = 0; k < 100; ++k) {
        const double x = X(rng), t = T(rng);
        const auto f = map.invert(t, {x, 0, 0});
        const double exact = burgers_gradient(map.grad_u0(f.x0), t)(0, 0);
        const double fd = (evaluate_burgers(map, t, {x + h, 0, 0})[0] - evaluate_burgers(map, t, {x - h, 0, 0})[0]) / (2 * h);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("2D characteristic inversion agrees with the gradient formula") {
    const Grid g = Grid::box(2, {128, 128, 1}, {-40, -40, 0}, {40, 40, 0}, true);
    const CharacteristicMap map(example1(g, 8.0, 6));
    const double t = 0.5, h = 1e-4;
    for (auto p : {std::array<double, 3>{1.0, 2.0, 0}, {-3.0, 0.5, 0}, {6.0, -4.0, 0}}) {
        const auto f = map.invert(t, p);
        const Mat G = burgers_gradient(map.grad_u0(f.x0), t);
        for (int a = 0; a < 2; ++a) {
            auto pp = p, pm = p;
            pp[a] += h;
            pm[a] -= h;
            const auto vp = evaluate_burgers(map, t, pp), vm = evaluate_burgers(map, t, pm);
            for (int c = 0; c < 2; ++c) CHECK(std::abs((vp[c] - vm[c]) / (2 * h) - G(c, a)) <= 1e-6);
        }
    }
}

TEST_CASE("det(I + t grad u0) stays positive before t*") {
    const Grid g = Grid::box1d(512, -8.0, 8.0, true);
    const Field u = compressive(g, 1.0);
    const auto v = burgers_blowup_time(u);
    const Field grad = velocity_gradient(u);
    for (int k = 0; k < 50; ++k) {
        const double t = v.t_star * k / 50.0;
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(1.0 + t * grad[i] > 0.0);
    }
}

TEST_CASE("Burgers PDE residual converges at second order") {
    const Grid g = Grid::box1d(2048, -8.0, 8.0, true);
    const CharacteristicMap map(compressive(g, 1.0));
    const double t = 0.5;
    auto residual = [&](double h) {
        double worst = 0.0;
        for (double x : {-4.5, -3.2, -2.1, 0.3, 1.7, 3.9}) {
            const double v = evaluate_burgers(map, t, {x, 0, 0})[0];
            const double vt = (evaluate_burgers(map, t + h, {x, 0, 0})[0] - evaluate_burgers(map, t - h, {x, 0, 0})[0]) / (2 * h);
            const double vx = (evaluate_burgers(map, t, {x + h, 0, 0})[0] - evaluate_burgers(map, t, {x - h, 0, 0})[0]) / (2 * h);
            worst = std::max(worst, std::abs(vt + v * vx));
        }
        return worst;
    };
    const double r1 = residual(2e-2), r2 = residual(1e-2);
    CHECK(std::log2(r1 / r2) == Approx(2.0).epsilon(0.15));
}

TEST_CASE("Grassin remainder") {
    const Grid g = Grid::box1d(128, -4.0, 4.0, false);
    const Field id = linear_velocity_1d(g, 1.0);
    const auto all = omega_alpha(id, 1.0 - 1e-12);
    CHECK(all.size() == g.size());
    for (double t : {0.0, 1.0, 10.0, 100.0}) CHECK(grassin_remainder(id, t, all) <= 1e-12);
    const Field two = linear_velocity_1d(g, 2.0);
    for (double t : {0.0, 0.5, 3.0, 100.0})
        CHECK(grassin_remainder(two, t, all) == Approx((1.0 + t) / (1.0 + 2.0 * t)).epsilon(1e-12));
    CHECK_THROWS(grassin_remainder(id, 1.0, {}));

    // expansive plateau data: remainder stays bounded on Omega_alpha
    const Grid ge = Grid::box1d(400, -10.0, 10.0, false);
    FamilyParams p;
    p.kind = "expansive_linear";
    p.plateau = {2.0, 5.0};
    const Field ue = standard_family(ge, p).state.u;
    const auto omega = omega_alpha(ue, 0.5);
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) worst = std::max(worst, grassin_remainder(ue, k * 1.0, omega));
    CHECK(worst <= 2.0);
}
