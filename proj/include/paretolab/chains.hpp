#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "paretolab/geometry.hpp"
#include "paretolab/grid.hpp"
#include "paretolab/sampling.hpp"

namespace paretolab {

enum class ChainAlgorithm {
    automatic,  ///< patience for d=2, staircases for d=3, dynamic program otherwise
    dynamic_program,
};

/// Length of the longest chain under the coordinatewise order. 0 for an
/// empty cloud.
std::size_t longest_chain(const PointCloud& cloud,
                          ChainAlgorithm algo = ChainAlgorithm::automatic);

using RegionPredicate = std::function<bool(std::span<const double>)>;

/// Points of the cloud satisfying the predicate, metadata preserved.
PointCloud filter_cloud(const PointCloud& cloud, const RegionPredicate& keep);

std::size_t longest_chain_in(const PointCloud& cloud, const RegionPredicate& region);

/// Predicates for the regions used with longest_chain_in.
RegionPredicate order_interval(std::vector<double> upper);
RegionPredicate in_simplex(Simplex S);
RegionPredicate in_domain(MaskedDomain dom);

struct DepthLabeling {
    std::vector<std::uint32_t> depth;
};

struct FrontPartition {
    std::vector<std::uint32_t> front_index;
    std::vector<std::vector<std::size_t>> fronts;
};

/// Depth of each point: the longest chain among cloud points <= it,
/// counting the point itself. Throws std::invalid_argument naming the pair
/// when two points coincide.
DepthLabeling pareto_depths(const PointCloud& cloud,
                            ChainAlgorithm algo = ChainAlgorithm::automatic);

/// Fronts F_1, F_2, ... by sequential front search: points are visited in
/// lexicographic order and each is placed in the first front containing no
/// point that dominates it. Throws on duplicate points.
FrontPartition nondominated_sort(const PointCloud& cloud);

/// U(x) = longest chain among cloud points <= x, i.e. the max depth over
/// those points (0 if none).
std::size_t depth_function_eval(const PointCloud& cloud, std::span<const double> x);
std::size_t depth_function_eval(const PointCloud& cloud, const DepthLabeling& depths,
                                std::span<const double> x);

struct ChainScalingConstants {
    std::size_t d;
    double c_d;

    /// Checks lower(d) <= c_d < e.
    ChainScalingConstants(std::size_t d, double c_d);

    /// c_2 = 2 is built in; for d >= 3 an estimate must be supplied.
    static ChainScalingConstants for_dimension(std::size_t d,
                                               std::optional<double> estimate = std::nullopt);
};

/// d^2 / ((d!)^{1/d} Gamma(1/d)), the classical lower bound on c_d.
double chain_constant_lower_bound(std::size_t d);

/// (d / c_d) n^{-1/d} U.
double scaled_depth(std::size_t U, double n, const ChainScalingConstants& consts);

/// U at every node of the grid. Points beyond the last node along some axis
/// are below no node and are ignored.
GridFunction depth_on_grid(const PointCloud& cloud, const Grid& grid);

}  // namespace paretolab
