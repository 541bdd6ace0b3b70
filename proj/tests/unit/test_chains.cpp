#include <algorithm>
#include <cmath>
#include <vector>

#include "../common/oracles.hpp"
#include "doctest.h"
#include "paretolab/chains.hpp"
#include "paretolab/density.hpp"
#include "paretolab/rng.hpp"

using namespace paretolab;

namespace {

using oracle::exhaustive_chain;
using oracle::random_cloud;
const auto& oracle_depths = oracle::depths;
const auto& oracle_peeling = oracle::peeling;

std::size_t oracle_U(const PointCloud& c, std::span<const double> x) {
    return longest_chain(filter_cloud(c, [&](std::span<const double> y) { return dominates(y, x); }),
                         ChainAlgorithm::dynamic_program);
}

}  // namespace

TEST_CASE("longest chain examples") {
    CHECK(longest_chain(PointCloud(2)) == 0);
    const auto c = PointCloud::from_points({{0.2, 0.3}, {0.5, 0.1}, {0.6, 0.7}, {0.8, 0.8}});
    CHECK(exhaustive_chain(c) == 3);
    CHECK(longest_chain(c) == 3);
    CHECK(longest_chain(c, ChainAlgorithm::dynamic_program) == 3);
    const auto anti = PointCloud::from_points({{0.1, 0.9}, {0.3, 0.6}, {0.5, 0.5}, {0.9, 0.05}});
    CHECK(longest_chain(anti) == 1);
}

TEST_CASE("longest chain matches exhaustive search on small clouds") {
    for (std::size_t d : {2u, 3u, 4u}) {
        for (std::uint64_t s = 0; s < 60; ++s) {
            const auto c = random_cloud(d, 2 + s % 11, 100 * d + s, s % 2 ? 4 : 0);
            const auto want = exhaustive_chain(c);
            CHECK(longest_chain(c) == want);
            CHECK(longest_chain(c, ChainAlgorithm::dynamic_program) == want);
        }
    }
}

TEST_CASE("fast paths agree with the dynamic program") {
    Rng sizes(77);
    for (std::uint64_t s = 0; s < 500; ++s) {
        const std::size_t n = 1 + static_cast<std::size_t>(sizes.uniform() * 2000);
        const auto c = random_cloud(2, n, s, s % 3 == 0 ? 30 : 0);
        CHECK(longest_chain(c) == longest_chain(c, ChainAlgorithm::dynamic_program));
    }
    for (std::uint64_t s = 0; s < 200; ++s) {
        const std::size_t n = 1 + static_cast<std::size_t>(sizes.uniform() * 2000);
        const auto c = random_cloud(3, n, 9000 + s, s % 3 == 0 ? 12 : 0);
        CHECK(longest_chain(c) == longest_chain(c, ChainAlgorithm::dynamic_program));
        const auto fast = pareto_depths(c);
        const auto slow = pareto_depths(c, ChainAlgorithm::dynamic_program);
        CHECK(fast.depth == slow.depth);
    }
}

TEST_CASE("depths and fronts on the reference example") {
    const auto c = PointCloud::from_points({{1, 5}, {2, 2}, {5, 1}, {3, 3}});
    const auto want = std::vector<std::uint32_t>{1, 1, 1, 2};
    CHECK(pareto_depths(c).depth == want);
    const auto peel = oracle_peeling(c);
    for (std::size_t i = 0; i < 4; ++i) CHECK(peel[i] == want[i]);
    const auto fronts = nondominated_sort(c);
    CHECK(fronts.front_index == want);
    REQUIRE(fronts.fronts.size() == 2);
    CHECK(fronts.fronts[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(fronts.fronts[1] == std::vector<std::size_t>{3});
}

TEST_CASE("depth edge cases") {
    CHECK(pareto_depths(PointCloud::from_points({{0.3, 0.3}})).depth == std::vector<std::uint32_t>{1});
    const auto chain = PointCloud::from_points({{0.4, 0.4, 0.4}, {0.1, 0.1, 0.1}, {0.2, 0.3, 0.2}});
    CHECK(pareto_depths(chain).depth == std::vector<std::uint32_t>{3, 1, 2});
    const auto fr = nondominated_sort(chain);
    CHECK(fr.fronts.size() == 3);
    const auto anti = PointCloud::from_points({{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
    CHECK(nondominated_sort(anti).fronts.size() == 1);
}

TEST_CASE("duplicates are rejected with the offending pair") {
    const auto c = PointCloud::from_points({{0.1, 0.2}, {0.5, 0.5}, {0.1, 0.2}});
    CHECK_THROWS_WITH_AS(pareto_depths(c), "duplicate points at indices 0 and 2",
                         std::invalid_argument);
    CHECK_THROWS_AS(nondominated_sort(c), std::invalid_argument);
    // Shared single coordinates are fine.
    const auto ties = PointCloud::from_points({{0.1, 0.2}, {0.1, 0.5}, {0.3, 0.2}});
    CHECK(pareto_depths(ties).depth == std::vector<std::uint32_t>{1, 2, 2});
}

TEST_CASE("depths equal brute-force peeling and fronts equal depths") {
    for (std::size_t d : {2u, 3u, 5u}) {
        for (std::uint64_t s = 0; s < 40; ++s) {
            const auto c = random_cloud(d, 20 + 10 * s, 7 * s + d, s % 2 ? 0 : 6);
            const auto depth = pareto_depths(c).depth;
            const auto oracle = oracle_depths(c);
            const auto peel = oracle_peeling(c);
            const auto fronts = nondominated_sort(c);
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(depth[i] == oracle[i]);
                CHECK(peel[i] == oracle[i]);
                CHECK(fronts.front_index[i] == depth[i]);
            }
            std::size_t total = 0;
            for (const auto& f : fronts.fronts) total += f.size();
            CHECK(total == c.size());
        }
    }
}

TEST_CASE("depth function matches filter then chain") {
    Rng rng(5);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const std::size_t d = 2 + s % 2;
        const auto c = random_cloud(d, 1 + s % 12, s);
        std::vector<double> x(d);
        for (auto& v : x) v = rng.uniform();
        const auto labels = pareto_depths(c);
        CHECK(depth_function_eval(c, x) == exhaustive_chain(filter_cloud(c, [&](auto y) {
                  return dominates(y, x);
              })));
        CHECK(depth_function_eval(c, labels, x) == depth_function_eval(c, x));
    }
    const auto c = random_cloud(2, 50, 3);
    CHECK(depth_function_eval(c, std::vector{-1.0, -1.0}) == 0);
    CHECK(depth_function_eval(c, std::vector{2.0, 2.0}) == longest_chain(c));
}

TEST_CASE("chains restricted to regions") {
    const auto c = random_cloud(2, 300, 11);
    CHECK(longest_chain_in(c, order_interval({-0.1, -0.1})) == 0);
    CHECK(longest_chain_in(c, [](auto) { return true; }) == longest_chain(c));
    CHECK(longest_chain_in(c, order_interval({0.5, 0.5})) == depth_function_eval(c, std::vector{0.5, 0.5}));

    const auto rho = DensityField::constant(2, 1.0);
    SampleConfig cfg;
    cfg.n = 100000;
    cfg.seed = 21;
    cfg.region = Region{2, 1.0, std::nullopt};
    const auto big = sample_poisson(rho, cfg);
    const Simplex S(Point{1.0, 1.0}, {1.0, 1.0});
    const auto L = longest_chain_in(big, in_simplex(S));
    const double scaled = scaled_depth(L, 1e5, ChainScalingConstants::for_dimension(2));
    CHECK(std::abs(scaled - 2.0 * std::sqrt(S.measure())) < 0.1);

    const MaskedDomain dom(0.5, 1.0);
    const auto Ld = longest_chain_in(big, in_domain(dom));
    CHECK(Ld <= longest_chain(big));
    CHECK(Ld == longest_chain(filter_cloud(big, [&](auto x) { return dom.contains(x); })));
}

TEST_CASE("scaled depth and chain constants") {
    const auto c2 = ChainScalingConstants::for_dimension(2);
    CHECK(c2.c_d == 2.0);
    CHECK(scaled_depth(7, 100, c2) == doctest::Approx(0.7));
    CHECK(scaled_depth(0, 100, c2) == 0.0);
    CHECK(chain_constant_lower_bound(2) == doctest::Approx(4.0 / (std::sqrt(2.0) * std::sqrt(M_PI))));
    CHECK(chain_constant_lower_bound(1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ChainScalingConstants(2, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(ChainScalingConstants(3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChainScalingConstants::for_dimension(3), std::invalid_argument);
    const auto c3 = ChainScalingConstants::for_dimension(3, 2.3);
    CHECK(scaled_depth(10, 1000, c3) == doctest::Approx(3.0 / 2.3 / 10.0 * 10.0));
}

TEST_CASE("depth on grid matches direct evaluation") {
    const Grid empty_grid(2, 9);
    const auto zero = depth_on_grid(PointCloud(2), empty_grid);
    CHECK(std::all_of(zero.values.begin(), zero.values.end(), [](double v) { return v == 0.0; }));

    // One point at the center: indicator of its upper orthant.
    const Grid g9(2, 9);
    const auto ind = depth_on_grid(PointCloud::from_points({{0.5, 0.5}}), g9);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < g9.size(); ++i) {
        g9.node(i, x);
        CHECK(ind[i] == ((x[0] >= 0.5 && x[1] >= 0.5) ? 1.0 : 0.0));
    }

    const Grid g(2, 64);
    const auto rho = DensityField::constant(2, 1.0);
    SampleConfig cfg;
    cfg.n = 1000;
    cfg.seed = 3;
    cfg.region = Region{2, 1.0, std::nullopt};
    const auto cloud = sample_poisson(rho, cfg);
    const auto U = depth_on_grid(cloud, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        CHECK(U[i] == static_cast<double>(depth_function_eval(cloud, x)));
    }

    // Points exactly on grid nodes and in 3D.
    const auto q = random_cloud(3, 400, 8, 10);
    const Grid g3(3, 11);
    const auto U3 = depth_on_grid(q, g3);
    std::vector<double> y(3);
    for (std::size_t i = 0; i < g3.size(); ++i) {
        g3.node(i, y);
        CHECK(U3[i] == static_cast<double>(oracle_U(q, y)));
    }
}

TEST_CASE("depth function is monotone") {
    const auto c = random_cloud(3, 500, 31);
    Rng rng(2);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> x(3), y(3);
        for (std::size_t k = 0; k < 3; ++k) {
            x[k] = rng.uniform();
            y[k] = x[k] + 0.3 * rng.uniform();
        }
        CHECK(depth_function_eval(c, x) <= depth_function_eval(c, y));
    }
}

TEST_CASE("chains glue across a dominated point") {
    const auto c = random_cloud(2, 800, 41);
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> x{rng.uniform(), rng.uniform()};
        std::vector<double> z{x[0] + (1 - x[0]) * rng.uniform(), x[1] + (1 - x[1]) * rng.uniform()};
        const auto between = longest_chain_in(c, [&](std::span<const double> y) {
            return y[0] > x[0] && y[1] > x[1] && dominates(y, z);
        });
        CHECK(depth_function_eval(c, z) >= depth_function_eval(c, x) + between);
    }
}

TEST_CASE("level sets of the depth function contain chains of the right length") {
    const auto c = random_cloud(2, 3000, 51);
    const auto labels = pareto_depths(c);
    Rng rng(4);
    int tested = 0;
    for (int t = 0; t < 400; ++t) {
        std::vector<double> x0{0.3 + 0.7 * rng.uniform(), 0.3 + 0.7 * rng.uniform()};
        const auto U0 = depth_function_eval(c, labels, x0);
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 10);
        if (U0 < k) continue;
        ++tested;
        const auto A = longest_chain_in(c, [&](std::span<const double> y) {
            return dominates(y, x0) && U0 - depth_function_eval(c, labels, y) <= k;
        });
        CHECK(A >= k);
        CHECK(A <= k + 1);
    }
    CHECK(tested > 100);
}
