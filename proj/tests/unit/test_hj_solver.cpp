#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "paretolab/hj_solver.hpp"
#include "paretolab/rng.hpp"

using namespace paretolab;

namespace {

double at(const GridFunction& u, std::vector<std::size_t> idx) {
    return u[u.grid.flat_index(idx)];
}

double prod_minus(double t, std::span<const double> a) {
    double p = 1.0;
    for (double ai : a) p *= t - ai;
    return p;
}

}  // namespace

TEST_CASE("node update examples") {
    CHECK(node_update(std::vector{0.0, 0.0}, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // (t - 0.5)(t - 0.3) = 0.01.
    const double quad = (0.8 + std::sqrt(0.64 - 4.0 * (0.15 - 0.01))) / 2.0;
    CHECK(quad == doctest::Approx(0.54142).epsilon(1e-5));
    CHECK(std::abs(node_update(std::vector{0.5, 0.3}, 0.1, 1.0) - quad) < 1e-12);
    CHECK(node_update(std::vector{0.2, 0.7}, 0.1, 0.0) == 0.7);
    CHECK(node_update(std::vector{0.2, 0.2, 0.2}, 0.5, 8.0) == doctest::Approx(1.2));
}

TEST_CASE("node update solves the product equation") {
    Rng rng(1);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t d = 2 + t % 3;
        std::vector<double> a(d);
        for (auto& v : a) v = 3.0 * rng.uniform();
        const double h = 1e-3 + 0.2 * rng.uniform();
        const double rho = 5.0 * rng.uniform();
        const double r = node_update(a, h, rho);
        CHECK(r >= *std::max_element(a.begin(), a.end()));
        const double target = std::pow(h, static_cast<double>(d)) * rho;
        CHECK(std::abs(prod_minus(r, a) - target) <= 1e-9 * (1.0 + target));
    }
}

TEST_CASE("closed form for constant density") {
    CHECK(exact_constant_solution(1.0, 0.0, std::vector{1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(exact_constant_solution(16.0, 0.5, std::vector{1.0, 1.0}) == doctest::Approx(4.0));
    CHECK(exact_constant_solution(3.0, 0.5, std::vector{0.25, 1.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(exact_constant_solution(1.0, 0.5, std::vector{0.1, 0.1}), std::domain_error);
}

TEST_CASE("solver matches the closed form on the box") {
    const auto rho = DensityField::constant(2, 1.0);
    const SolveSpec spec{&rho, std::nullopt, 1e-12};
    const auto u = solve_hj(spec, Grid(2, 257));
    CHECK(at(u, {64, 64}) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(at(u, {256, 256}) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(at(u, {0, 100}) == 0.0);
    CHECK(at(u, {100, 0}) == 0.0);
}

TEST_CASE("solver error decreases under refinement") {
    const auto rho = DensityField::constant(2, 1.0);
    const SolveSpec spec{&rho, std::nullopt, 1e-12};
    double prev = 1e300;
    for (std::size_t m : {64u, 128u, 256u, 512u}) {
        const Grid g(2, m);
        const auto u = solve_hj(spec, g);
        double err = 0.0;
        std::vector<double> x(2);
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.node(i, x);
            if (geometric_mean(x) <= 0.2) continue;
            err = std::max(err, std::abs(u[i] - 2.0 * std::sqrt(x[0] * x[1])));
        }
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("solver is monotone and obeys comparison") {
    const auto lo = DensityField::affine(2, 1.0, {0.5, -0.3});
    const auto hi = DensityField::affine(2, 1.5, {0.5, -0.3});
    const Grid g(2, 101);
    const auto u1 = solve_hj(SolveSpec{&lo, std::nullopt, 1e-12}, g);
    const auto u2 = solve_hj(SolveSpec{&hi, std::nullopt, 1e-12}, g);
    std::vector<std::size_t> idx(2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(u1[i] <= u2[i] + 1e-12);
        g.multi_index(i, idx);
        for (std::size_t k = 0; k < 2; ++k) {
            if (idx[k] == 0) continue;
            CHECK(u1[i] >= u1[i - g.stride(k)]);
        }
    }

    const auto b3 = DensityField::smooth_bump(3, 1.0, 1.0, {0.5, 0.5, 0.5}, 0.3);
    const auto b3hi = DensityField::smooth_bump(3, 1.2, 1.0, {0.5, 0.5, 0.5}, 0.3);
    const Grid g3(3, 21);
    const auto v1 = solve_hj(SolveSpec{&b3, std::nullopt, 1e-12}, g3);
    const auto v2 = solve_hj(SolveSpec{&b3hi, std::nullopt, 1e-12}, g3);
    for (std::size_t i = 0; i < g3.size(); ++i) CHECK(v1[i] <= v2[i] + 1e-12);
}

TEST_CASE("scaling the density by c^d scales the solution by c") {
    const auto base = DensityField::affine(2, 1.0, {0.4, 0.2});
    const double c = 1.7;
    const auto scaled = DensityField::affine(2, c * c, {0.4 * c * c, 0.2 * c * c});
    const Grid g(2, 65);
    const auto u = solve_hj(SolveSpec{&base, std::nullopt, 1e-12}, g);
    const auto v = solve_hj(SolveSpec{&scaled, std::nullopt, 1e-12}, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(v[i] - c * u[i]) < 1e-10);

    const auto one = DensityField::constant(3, 1.0);
    const auto eight = DensityField::constant(3, 8.0);
    const Grid g3(3, 17);
    const auto a = solve_hj(SolveSpec{&one, std::nullopt, 1e-12}, g3);
    const auto b = solve_hj(SolveSpec{&eight, std::nullopt, 1e-12}, g3);
    for (std::size_t i = 0; i < g3.size(); ++i) CHECK(std::abs(b[i] - 2.0 * a[i]) < 1e-10);
}

TEST_CASE("masked solve vanishes off the domain and tracks the closed form") {
    const auto rho = DensityField::constant(2, 1.0);
    const double R = 0.4;
    const Grid g(2, 257);
    const auto u = solve_hj(SolveSpec{&rho, MaskedDomain(R), 1e-12}, g);
    std::vector<double> x(2);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        const double G = geometric_mean(x);
        if (G <= R) {
            CHECK(u[i] == 0.0);
        } else if (G > R + 2.0 * g.spacing()) {
            err = std::max(err, std::abs(u[i] - exact_constant_solution(1.0, R, x)));
        }
    }
    CHECK(err < 0.05);
}

TEST_CASE("boundary expansion with flat data is exact") {
    const Point x0{1.0, 1.0};
    const BoundaryExpansion e(x0, 2.0, {0.0, 0.0});
    CHECK(e.value(x0) == 0.0);
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x{0.5 + rng.uniform(), 0.5 + rng.uniform()};
        CHECK(e.v(x) == 0.0);
        CHECK(std::abs(e.residual(x)) < 1e-12);
    }
}

TEST_CASE("boundary expansion vanishes on the surface") {
    Rng rng(4);
    for (std::size_t d : {2u, 3u}) {
        const Point x0 = d == 2 ? Point{2.0, 0.5} : Point{0.5, 1.0, 2.0};
        const BoundaryExpansion e(x0, 1.3, std::vector<double>(d, 0.0));
        std::vector<double> p(d);
        for (auto& v : p) v = rng.uniform() - 0.5;
        const BoundaryExpansion f(x0, 1.3, p);
        CHECK(std::abs(f.value(x0)) < 1e-14);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> x(d);
            double prod = 1.0;
            for (std::size_t k = 0; k + 1 < d; ++k) {
                x[k] = 0.3 + 2.0 * rng.uniform();
                prod *= x[k];
            }
            x[d - 1] = 1.0 / prod;
            CHECK(std::abs(f.v(x)) < 1e-12);
            CHECK(std::abs(f.value(x)) < 1e-12);
        }
    }
    CHECK_THROWS(BoundaryExpansion(Point{1.0, 2.0}, 1.0, {0.0, 0.0}));
    CHECK_THROWS(BoundaryExpansion(Point{1.0, 1.0}, -1.0, {0.0, 0.0}));
    const BoundaryExpansion e(Point{1.0, 1.0}, 1.0, {0.1, 0.1});
    CHECK_THROWS(e.value(std::vector{0.0, 1.0}));
}

TEST_CASE("boundary expansion derivatives match finite differences") {
    Rng rng(5);
    for (std::size_t d : {2u, 3u}) {
        const Point x0 = d == 2 ? Point{0.8, 1.25} : Point{0.5, 1.0, 2.0};
        std::vector<double> p(d);
        for (auto& v : p) v = rng.uniform() - 0.5;
        const BoundaryExpansion e(x0, 0.7, p);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) x[k] = x0[k] * (0.8 + 0.4 * rng.uniform());
            const auto g = e.gradient(x);
            const auto H = e.hessian(x);
            const double s = 1e-5;
            for (std::size_t i = 0; i < d; ++i) {
                auto xp = x, xm = x;
                xp[i] += s;
                xm[i] -= s;
                CHECK(g[i] == doctest::Approx((e.value(xp) - e.value(xm)) / (2 * s)).epsilon(1e-6));
                const auto gp = e.gradient(xp);
                const auto gm = e.gradient(xm);
                for (std::size_t j = 0; j < d; ++j) {
                    CHECK(H[i * d + j] == doctest::Approx((gp[j] - gm[j]) / (2 * s)).epsilon(1e-5));
                    CHECK(H[i * d + j] == doctest::Approx(H[j * d + i]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("boundary expansion residual decays quadratically") {
    const Point x0{1.0, 1.0};
    const BoundaryExpansion e(x0, 1.0, {0.4, -0.3});
    auto sup_residual = [&](double eps) {
        double worst = 0.0;
        for (int r = 1; r <= 8; ++r) {
            for (int k = 0; k < 64; ++k) {
                const double th = 2.0 * M_PI * k / 64.0;
                const double rr = eps * r / 8.0;
                const std::vector<double> x{x0[0] + rr * std::cos(th), x0[1] + rr * std::sin(th)};
                worst = std::max(worst, std::abs(e.residual(x)));
            }
        }
        return worst;
    };
    const double e1 = sup_residual(0.1);
    const double e2 = sup_residual(0.05);
    const double e3 = sup_residual(0.025);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("variational value of straight segments") {
    const auto one = DensityField::constant(3, 1.0);
    const std::vector<Point> seg{Point{0.0, 0.0, 0.0}, Point{0.3, 0.6, 0.9}};
    CHECK(std::abs(variational_value(one, seg) - 3.0 * std::cbrt(0.3 * 0.6 * 0.9)) < 1e-10);
    const auto four = DensityField::constant(2, 4.0);
    const std::vector<Point> seg2{Point{0.0, 0.0}, Point{1.0, 1.0}};
    CHECK(std::abs(variational_value(four, seg2) - 4.0) < 1e-10);
    const std::vector<Point> bad{Point{0.0, 0.0}, Point{0.5, 0.5}, Point{0.4, 1.0}};
    CHECK_THROWS_AS(variational_value(four, bad), std::invalid_argument);
}

TEST_CASE("kinked polylines stay below the optimum") {
    const auto one = DensityField::constant(2, 1.0);
    Rng rng(6);
    for (int t = 0; t < 500; ++t) {
        std::vector<Point> poly{Point{0.0, 0.0}};
        const double X = 0.2 + rng.uniform(), Y = 0.2 + rng.uniform();
        std::vector<double> xs{0.0, X}, ys{0.0, Y};
        for (int k = 0; k < 3; ++k) {
            xs.push_back(X * rng.uniform());
            ys.push_back(Y * rng.uniform());
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        std::vector<Point> pl;
        for (std::size_t k = 0; k < xs.size(); ++k) pl.push_back(Point{xs[k], ys[k]});
        CHECK(variational_value(one, pl) <= 2.0 * std::sqrt(X * Y) + 1e-8);
    }
}

TEST_CASE("variational lower bounds agree with the solver") {
    const auto rho = DensityField::smooth_bump(2, 1.0, 1.5, {0.6, 0.4}, 0.2);
    const auto one = DensityField::constant(2, 1.0);
    const Grid g(2, 257);
    const auto u = solve_hj(SolveSpec{&rho, std::nullopt, 1e-12}, g);
    const double end = at(u, {256, 256});
    // Discretization tolerance from the constant density, scaled by the
    // density's root range.
    const auto u1 = solve_hj(SolveSpec{&one, std::nullopt, 1e-12}, g);
    const double tol = 2.0 * std::abs(at(u1, {256, 256}) - 2.0) * std::sqrt(rho.rho_max());
    Rng rng(7);
    double best = 0.0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
        for (int k = 0; k < 4; ++k) {
            xs.push_back(rng.uniform());
            ys.push_back(rng.uniform());
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        std::vector<Point> pl;
        for (std::size_t k = 0; k < xs.size(); ++k) pl.push_back(Point{xs[k], ys[k]});
        best = std::max(best, variational_value(rho, pl));
    }
    CHECK(best <= end + tol);
    CHECK(best > 0.9 * end);
}
