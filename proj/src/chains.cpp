#include "paretolab/chains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paretolab {

namespace {

std::vector<std::size_t> lex_order(const PointCloud& cloud) {
    std::vector<std::size_t> order(cloud.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t d = cloud.dim();
    const double* c = cloud.coords().data();
    std::sort(order.begin(), order.end(), [c, d](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(c + a * d, c + a * d + d, c + b * d, c + b * d + d);
    });
    return order;
}

void reject_duplicates(const PointCloud& cloud, const std::vector<std::size_t>& lex) {
    for (std::size_t k = 1; k < lex.size(); ++k) {
        const auto a = cloud.point(lex[k - 1]);
        const auto b = cloud.point(lex[k]);
        if (std::equal(a.begin(), a.end(), b.begin())) {
            const auto i = std::min(lex[k - 1], lex[k]);
            const auto j = std::max(lex[k - 1], lex[k]);
            throw std::invalid_argument("duplicate points at indices " + std::to_string(i) +
                                        " and " + std::to_string(j));
        }
    }
}

// Per-point chain lengths in lexicographic order, d = 2: longest
// nondecreasing subsequence of the second coordinate.
void lengths_patience(const PointCloud& cloud, const std::vector<std::size_t>& lex,
                      std::vector<std::uint32_t>& len) {
    std::vector<double> tails;
    for (std::size_t i : lex) {
        const double y = cloud.point(i)[1];
        const auto it = std::upper_bound(tails.begin(), tails.end(), y);
        len[i] = static_cast<std::uint32_t>(it - tails.begin()) + 1;
        if (it == tails.end()) {
            tails.push_back(y);
        } else {
            *it = y;
        }
    }
}

// d = 3: for each chain length k, the minimal (x2, x3) pairs among processed
// points of length k form a staircase (x2 increasing, x3 decreasing).
class StaircaseLevels {
public:
    bool has_below(std::size_t level, double a, double b) const {
        const auto& s = levels_[level];
        auto it = s.upper_bound(a);
        if (it == s.begin()) return false;
        --it;
        return it->second <= b;
    }

    std::size_t size() const { return levels_.size(); }

    void insert(std::size_t level, double a, double b) {
        if (level == levels_.size()) levels_.emplace_back();
        if (has_below(level, a, b)) return;
        auto& s = levels_[level];
        auto it = s.lower_bound(a);
        while (it != s.end() && it->second >= b) it = s.erase(it);
        s.emplace_hint(it, a, b);
    }

private:
    std::vector<std::map<double, double>> levels_;
};

void lengths_staircase(const PointCloud& cloud, const std::vector<std::size_t>& lex,
                       std::vector<std::uint32_t>& len) {
    StaircaseLevels levels;
    for (std::size_t i : lex) {
        const auto p = cloud.point(i);
        // Largest k with a length-k point below p; the set of such k is
        // downward closed.
        std::size_t lo = 0;
        std::size_t hi = levels.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (levels.has_below(mid - 1, p[1], p[2])) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        len[i] = static_cast<std::uint32_t>(lo + 1);
        levels.insert(lo, p[1], p[2]);
    }
}

void lengths_dp(const PointCloud& cloud, std::vector<std::uint32_t>& len) {
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    std::vector<double> sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (double v : cloud.point(i)) sum[i] += v;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const double* c = cloud.coords().data();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sum[a] != sum[b]) return sum[a] < sum[b];
        return std::lexicographical_compare(c + a * d, c + a * d + d, c + b * d, c + b * d + d);
    });
    std::uint32_t longest = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        const auto p = cloud.point(i);
        std::uint32_t best = 0;
        for (std::size_t q = k; q-- > 0 && best < longest;) {
            const std::size_t j = order[q];
            if (len[j] > best && dominates(cloud.point(j), p)) best = len[j];
        }
        len[i] = best + 1;
        longest = std::max(longest, len[i]);
    }
}

std::vector<std::uint32_t> chain_lengths(const PointCloud& cloud, ChainAlgorithm algo,
                                         bool check_duplicates) {
    std::vector<std::uint32_t> len(cloud.size(), 0);
    if (cloud.empty()) return len;
    const std::size_t d = cloud.dim();
    if (algo == ChainAlgorithm::dynamic_program || d > 3) {
        if (check_duplicates) reject_duplicates(cloud, lex_order(cloud));
        lengths_dp(cloud, len);
        return len;
    }
    const auto lex = lex_order(cloud);
    if (check_duplicates) reject_duplicates(cloud, lex);
    if (d == 2) {
        lengths_patience(cloud, lex, len);
    } else {
        lengths_staircase(cloud, lex, len);
    }
    return len;
}

}  // namespace

std::size_t longest_chain(const PointCloud& cloud, ChainAlgorithm algo) {
    if (cloud.empty()) return 0;
    const auto len = chain_lengths(cloud, algo, false);
    return *std::max_element(len.begin(), len.end());
}

PointCloud filter_cloud(const PointCloud& cloud, const RegionPredicate& keep) {
    PointCloud out(cloud.dim(), cloud.meta());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (keep(cloud.point(i))) out.push_back(cloud.point(i));
    }
    return out;
}

std::size_t longest_chain_in(const PointCloud& cloud, const RegionPredicate& region) {
    return longest_chain(filter_cloud(cloud, region));
}

RegionPredicate order_interval(std::vector<double> upper) {
    return [upper = std::move(upper)](std::span<const double> x) { return dominates(x, upper); };
}

RegionPredicate in_simplex(Simplex S) {
    return [S = std::move(S)](std::span<const double> x) { return S.contains(x); };
}

RegionPredicate in_domain(MaskedDomain dom) {
    return [dom](std::span<const double> x) { return dom.contains(x); };
}

DepthLabeling pareto_depths(const PointCloud& cloud, ChainAlgorithm algo) {
    return DepthLabeling{chain_lengths(cloud, algo, true)};
}

FrontPartition nondominated_sort(const PointCloud& cloud) {
    FrontPartition out;
    out.front_index.assign(cloud.size(), 0);
    const auto lex = lex_order(cloud);
    reject_duplicates(cloud, lex);
    for (std::size_t i : lex) {
        const auto p = cloud.point(i);
        std::size_t k = 0;
        for (; k < out.fronts.size(); ++k) {
            const auto& front = out.fronts[k];
            const bool blocked = std::any_of(front.begin(), front.end(), [&](std::size_t j) {
                return dominates(cloud.point(j), p);
            });
            if (!blocked) break;
        }
        if (k == out.fronts.size()) out.fronts.emplace_back();
        out.fronts[k].push_back(i);
        out.front_index[i] = static_cast<std::uint32_t>(k + 1);
    }
    for (auto& f : out.fronts) std::sort(f.begin(), f.end());
    return out;
}

std::size_t depth_function_eval(const PointCloud& cloud, const DepthLabeling& depths,
                                std::span<const double> x) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (depths.depth[i] > best && dominates(cloud.point(i), x)) best = depths.depth[i];
    }
    return best;
}

std::size_t depth_function_eval(const PointCloud& cloud, std::span<const double> x) {
    return longest_chain_in(cloud, order_interval({x.begin(), x.end()}));
}

double chain_constant_lower_bound(std::size_t d) {
    const double dd = static_cast<double>(d);
    const double log_fact = std::lgamma(dd + 1.0);
    return dd * dd / (std::exp(log_fact / dd) * std::tgamma(1.0 / dd));
}

ChainScalingConstants::ChainScalingConstants(std::size_t dim, double c) : d(dim), c_d(c) {
    if (d < 2) throw std::invalid_argument("chain constant: d must be >= 2");
    const double lower = chain_constant_lower_bound(d);
    if (!(c_d >= lower && c_d < std::numbers::e)) {
        throw std::invalid_argument("chain constant c_" + std::to_string(d) + " = " +
                                    std::to_string(c_d) + " outside [" + std::to_string(lower) +
                                    ", e)");
    }
}

ChainScalingConstants ChainScalingConstants::for_dimension(std::size_t d,
                                                           std::optional<double> estimate) {
    if (estimate) return ChainScalingConstants(d, *estimate);
    if (d == 2) return ChainScalingConstants(2, 2.0);
    throw std::invalid_argument("chain constant for d = " + std::to_string(d) +
                                " is unknown and must be supplied");
}

double scaled_depth(std::size_t U, double n, const ChainScalingConstants& consts) {
    if (!(n >= 1.0)) throw std::invalid_argument("scaled_depth: n must be >= 1");
    const double dd = static_cast<double>(consts.d);
    return dd / consts.c_d * std::pow(n, -1.0 / dd) * static_cast<double>(U);
}

GridFunction depth_on_grid(const PointCloud& cloud, const Grid& grid) {
    if (!cloud.empty() && cloud.dim() != grid.dim()) {
        throw std::invalid_argument("depth_on_grid: cloud and grid dimensions differ");
    }
    GridFunction out(grid, 0.0);
    if (cloud.empty()) return out;
    const std::size_t d = grid.dim();
    const std::size_t m = grid.nodes_per_axis();
    const double h = grid.spacing();
    const auto depths = chain_lengths(cloud, ChainAlgorithm::automatic, false);

    // Bucket each point at the lowest node above it.
    std::vector<std::uint32_t> bucket(grid.size(), 0);
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        bool inside = true;
        for (std::size_t a = 0; a < d && inside; ++a) {
            if (p[a] > grid.coord(m - 1)) {
                inside = false;
                break;
            }
            auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(p[a] / h)));
            k = std::min(k, m - 1);
            while (k < m - 1 && grid.coord(k) < p[a]) ++k;
            while (k > 0 && grid.coord(k - 1) >= p[a]) --k;
            idx[a] = k;
        }
        if (!inside) continue;
        auto& b = bucket[grid.flat_index(idx)];
        b = std::max(b, depths[i]);
    }

    // Running max along each axis in turn.
    for (std::size_t a = 0; a < d; ++a) {
        const std::size_t stride = grid.stride(a);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if ((f / stride) % m != 0) bucket[f] = std::max(bucket[f], bucket[f - stride]);
        }
    }
    for (std::size_t f = 0; f < grid.size(); ++f) out.values[f] = bucket[f];
    return out;
}

}  // namespace paretolab
