#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "paretolab/density.hpp"
#include "paretolab/geometry.hpp"
#include "paretolab/grid.hpp"

namespace paretolab {

enum class InfConvolutionMethod { brute_force, separable };

struct InfConvolution {
    GridFunction values;
    /// Flat index of the minimizing node y for every node x.
    std::vector<std::size_t> argmin;
};

/// u_alpha(x) = min over nodes y of f(y) + |x - y|^2 / (2 alpha). Nonfinite
/// values of f are treated as +infinity. Ties go to the lowest flat index in
/// the brute-force method.
InfConvolution inf_convolution(const GridFunction& f, double alpha,
                               InfConvolutionMethod method = InfConvolutionMethod::separable);

using NodePredicate = std::function<bool(std::span<const double>)>;

/// Offset in node units.
using GridOffset = std::vector<int>;

/// k e_i and k (e_i +- e_j), i < j, for k in {1, 2, 4}.
std::vector<GridOffset> default_offsets(std::size_t d);

struct SecondDifferenceReport {
    double worst_value = 0.0;
    Point arg_x;
    std::vector<double> arg_h;
    std::size_t samples = 0;
};

/// max over admissible (x, h) of -(f(x+h) - 2 f(x) + f(x-h)) / |h|^2,
/// clamped below at 0. A pair is admissible when x and x +- h are grid
/// nodes satisfying `domain`. Throws std::invalid_argument if none is.
SecondDifferenceReport semiconvexity_constant(const GridFunction& f, const NodePredicate& domain,
                                              const std::vector<GridOffset>& offsets);

/// Same with the sign flipped: the smallest C with
/// f(x+h) - 2 f(x) + f(x-h) <= C |h|^2 on admissible pairs.
SecondDifferenceReport semiconcavity_constant(const GridFunction& f, const NodePredicate& domain,
                                              const std::vector<GridOffset>& offsets);

/// max over axis-adjacent node pairs inside `domain` of |f(y) - f(x)| / h.
double lipschitz_constant(const GridFunction& f, const NodePredicate& domain);

struct BlowupFit {
    std::vector<double> radii;
    std::vector<double> constants;
    std::vector<std::size_t> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// For each R: solve on Omega_R, measure the semiconvexity constant on nodes
/// with geometric mean > R + 2h, then fit log(constant) against log(R).
/// Throws std::invalid_argument when radii are not strictly decreasing or the
/// grid has fewer than 8 cells across R^d for the smallest radius.
BlowupFit semiconvexity_blowup_fit(const DensityField& density, const std::vector<double>& radii,
                                   const Grid& grid, std::size_t workers = 1);

}  // namespace paretolab
