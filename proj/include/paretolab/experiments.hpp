#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "paretolab/chains.hpp"
#include "paretolab/density.hpp"
#include "paretolab/grid.hpp"
#include "paretolab/regularity.hpp"

namespace paretolab {

/// Where and how an experiment runs. Results never depend on `workers`.
/// When `out_dir` is set the experiment writes `<name>.csv` with the raw
/// per-trial rows and `<name>.summary.json` with fits, theory exponents,
/// `config` and the wall time.
struct ExperimentOptions {
    std::size_t workers = 1;
    std::optional<std::filesystem::path> out_dir;
    std::string name;
    nlohmann::json config = nlohmann::json::object();
};

struct TrialResult {
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    double statistic = 0.0;
};

/// Fitted constants are not part of the theory; only slopes and trends are
/// comparable with it.
struct RateFitResult {
    std::vector<std::uint64_t> ns;
    std::vector<double> means;
    std::vector<double> stds;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double theory_slope = 0.0;
    /// The smallest-n point is more than 2 sigma off the line through the rest.
    bool smallest_n_flagged = false;
    /// False when some mean was not positive and no fit was possible.
    bool fitted = false;
};

/// Seed of trial `trial` for an experiment stage identified by `tag`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial, const std::string& tag);

struct CdEstimate {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;
    std::vector<TrialResult> trials;
};

/// Mean of n^{-1/d} l([0,1]^d cap X_n) over Poisson clouds of unit density,
/// with a normal-approximation 95% interval.
CdEstimate estimate_cd(std::size_t d, std::uint64_t n, std::size_t trials, std::uint64_t seed,
                       const ExperimentOptions& opts = {});

struct CellProblemResult {
    double limit = 0.0;
    /// Means and stds of the scaled chain length per n, with the fit of
    /// |mean - limit| against n.
    RateFitResult bias;
    /// The same means and stds, with the fit of the std against n.
    RateFitResult spread;
    std::vector<TrialResult> trials;
};

/// Scaled longest chain in the simplex with apex p and sides p (so it sits
/// in [0, max p]^d) under intensity n rho0. Requires d |S|^{1/d} <= 1.
CellProblemResult cell_problem_experiment(std::size_t d, double rho0, const std::vector<double>& p,
                                          const std::vector<std::uint64_t>& ns, std::size_t trials,
                                          std::uint64_t seed, const ExperimentOptions& opts = {},
                                          std::optional<double> c_d = std::nullopt);

struct RateExperimentResult {
    /// sup (u_n - u)_+ over admissible nodes.
    RateFitResult upper;
    /// sup (u - u_n)_+ over admissible nodes.
    RateFitResult lower;
    /// Solver check for constant densities: sup |u - exact| on admissible
    /// nodes, or a negative value when the density is not constant.
    double solver_error = -1.0;
    std::vector<TrialResult> upper_trials;
    std::vector<TrialResult> lower_trials;
};

/// Sup-norm deviations between the scaled depth and the PDE solution on
/// Omega_R. Admissible nodes have geometric mean > R + 2h. Requires
/// R in (0, 1/2] and h <= R/16.
RateExperimentResult rate_experiment(std::size_t d, double R, const DensityField& density,
                                     const std::vector<std::uint64_t>& ns, std::size_t trials,
                                     const Grid& grid, std::uint64_t seed,
                                     const ExperimentOptions& opts = {},
                                     std::optional<double> c_d = std::nullopt);

/// The same pipeline on the whole unit cube. Also writes
/// `<name>.deviation.csv`: per-node mean of u - u_n at the largest n.
RateExperimentResult full_domain_rate_experiment(std::size_t d, const DensityField& density,
                                                 const std::vector<std::uint64_t>& ns,
                                                 std::size_t trials, const Grid& grid,
                                                 std::uint64_t seed,
                                                 const ExperimentOptions& opts = {},
                                                 std::optional<double> c_d = std::nullopt);

/// Theory exponents of the full-domain rates: 1/(2d^3+d^2+5d+1) and
/// 1/(2d^3-d^2+3d+1).
double full_domain_upper_exponent(std::size_t d);
double full_domain_lower_exponent(std::size_t d);

struct BoundarySupResult {
    double mean = 0.0;
    double std = 0.0;
    std::vector<TrialResult> trials;
    /// Largest exact constant-density solution (with rho_max) over tube nodes.
    double pde_sup = 0.0;
    /// d rho_max^{1/d} eps.
    double pde_bound = 0.0;
};

/// Max of the scaled depth over grid nodes in the tube R < geomean <= R + eps.
BoundarySupResult boundary_sup_experiment(std::size_t d, double R, double eps,
                                          const DensityField& density, std::uint64_t n,
                                          std::size_t trials, const Grid& grid,
                                          std::uint64_t seed, const ExperimentOptions& opts = {},
                                          std::optional<double> c_d = std::nullopt);

/// Writes `<name>.csv` (R, constant, samples) and `<name>.summary.json`.
void write_blowup_outputs(const BlowupFit& fit, const ExperimentOptions& opts, double wall_seconds);

/// Solves on Omega_R and reports the Lipschitz constant on nodes with
/// geomean > R + 2h for each radius, fitted against R.
struct LipschitzScaling {
    std::vector<double> radii;
    std::vector<double> constants;
    double slope = 0.0;
    double r2 = 0.0;
};
LipschitzScaling lipschitz_scaling(const DensityField& density, const std::vector<double>& radii,
                                   const Grid& grid, std::size_t workers = 1);

}  // namespace paretolab
