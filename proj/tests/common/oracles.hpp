#pragma once

// Brute-force reference implementations shared by the tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "paretolab/chains.hpp"
#include "paretolab/geometry.hpp"
#include "paretolab/rng.hpp"
#include "paretolab/sampling.hpp"

namespace paretolab::oracle {

// Random cloud; with `levels` > 0 coordinates are quantized so that ties in
// single coordinates are common. Duplicates are dropped.
inline PointCloud random_cloud(std::size_t d, std::size_t n, std::uint64_t seed, int levels = 0) {
    Rng rng(seed);
    std::set<std::vector<double>> seen;
    PointCloud cloud(d);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(d);
        for (auto& v : x) {
            v = rng.uniform();
            if (levels > 0) v = std::floor(v * levels) / levels;
        }
        if (seen.insert(x).second) cloud.push_back(x);
    }
    return cloud;
}

// Longest chain ending at each point, by memoized recursion over all pairs.
inline std::vector<std::size_t> depths(const PointCloud& c) {
    const std::size_t n = c.size();
    std::vector<std::size_t> memo(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> std::size_t {
        if (memo[i] != 0) return memo[i];
        std::size_t best = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && dominates(c.point(j), c.point(i))) best = std::max(best, self(self, j));
        }
        return memo[i] = best + 1;
    };
    for (std::size_t i = 0; i < n; ++i) rec(rec, i);
    return memo;
}

// Largest totally ordered subset, by enumerating all subsets. n <= 20.
inline std::size_t exhaustive_chain(const PointCloud& c) {
    const std::size_t n = c.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1u)) continue;
            for (std::size_t j = i + 1; j < n && ok; ++j) {
                if (!(mask >> j & 1u)) continue;
                ok = dominates(c.point(i), c.point(j)) || dominates(c.point(j), c.point(i));
            }
        }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
    }
    return best;
}

// Fronts by repeatedly removing the minimal elements; 1-based.
inline std::vector<std::size_t> peeling(const PointCloud& c) {
    const std::size_t n = c.size();
    std::vector<std::size_t> front(n, 0);
    std::size_t left = n;
    for (std::size_t k = 1; left > 0; ++k) {
        std::vector<std::size_t> minimal;
        for (std::size_t i = 0; i < n; ++i) {
            if (front[i] != 0) continue;
            bool is_min = true;
            for (std::size_t j = 0; j < n && is_min; ++j) {
                if (j != i && front[j] == 0 && dominates(c.point(j), c.point(i))) is_min = false;
            }
            if (is_min) minimal.push_back(i);
        }
        for (auto i : minimal) front[i] = k;
        left -= minimal.size();
    }
    return front;
}

inline std::vector<double> uniform_point(Rng& rng, std::size_t d, double lo = 0.0, double hi = 1.0) {
    std::vector<double> x(d);
    for (auto& v : x) v = rng.uniform(lo, hi);
    return x;
}

// Ordered pairs of independent uniform points of the tube
// R < geomean <= R + eps in [0,1]^d, by rejection.
inline std::vector<std::pair<std::vector<double>, std::vector<double>>> tube_intervals(
    double R, double eps, std::size_t d, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    auto in_tube = [&](const std::vector<double>& x) {
        const double g = geometric_mean(x);
        return g > R && g <= R + eps;
    };
    std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
    while (out.size() < count) {
        auto a = uniform_point(rng, d);
        auto b = uniform_point(rng, d);
        if (!in_tube(a) || !in_tube(b)) continue;
        if (dominates(a, b)) {
            out.emplace_back(a, b);
        } else if (dominates(b, a)) {
            out.emplace_back(b, a);
        }
    }
    return out;
}

}  // namespace paretolab::oracle
