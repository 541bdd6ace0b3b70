#include "paretolab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "paretolab/csv_io.hpp"
#include "paretolab/fit.hpp"
#include "paretolab/hj_solver.hpp"
#include "paretolab/parallel.hpp"
#include "paretolab/rng.hpp"
#include "paretolab/sampling.hpp"

namespace paretolab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd r;
    if (v.empty()) return r;
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - r.mean) * (x - r.mean);
        r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return r;
}

void check_ladder(const std::vector<std::uint64_t>& ns) {
    if (ns.empty()) throw std::invalid_argument("n ladder is empty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw std::invalid_argument("n ladder entries must be >= 1");
        if (i > 0 && ns[i] <= ns[i - 1]) {
            throw std::invalid_argument("n ladder must be strictly increasing");
        }
    }
}

// stats[k] holds the per-trial statistics at ns[k].
RateFitResult summarize(const std::vector<std::uint64_t>& ns,
                        const std::vector<std::vector<double>>& stats, double theory) {
    RateFitResult r;
    r.ns = ns;
    r.theory_slope = theory;
    for (const auto& s : stats) {
        const auto ms = mean_std(s);
        r.means.push_back(ms.mean);
        r.stds.push_back(ms.std);
    }
    return r;
}

void fit_means(RateFitResult& r, const std::vector<double>& ys) {
    if (r.ns.size() < 3) return;
    if (std::any_of(ys.begin(), ys.end(), [](double v) { return !(v > 0.0); })) return;
    std::vector<double> xs(r.ns.begin(), r.ns.end());
    const auto fit = fit_loglog(xs, ys);
    r.slope = fit.slope;
    r.intercept = fit.intercept;
    r.r2 = fit.r2;
    r.smallest_n_flagged = smallest_point_is_outlier(xs, ys);
    r.fitted = true;
}

nlohmann::json to_json(const RateFitResult& r) {
    return nlohmann::json{{"ns", r.ns},
                          {"means", r.means},
                          {"stds", r.stds},
                          {"fitted", r.fitted},
                          {"slope", r.slope},
                          {"intercept", r.intercept},
                          {"r2", r.r2},
                          {"theory_slope", r.theory_slope},
                          {"smallest_n_flagged", r.smallest_n_flagged}};
}

std::filesystem::path output_path(const ExperimentOptions& opts, const std::string& suffix) {
    std::filesystem::create_directories(*opts.out_dir);
    return *opts.out_dir / (opts.name + suffix);
}

void write_summary(const ExperimentOptions& opts, nlohmann::json summary, double wall) {
    summary["name"] = opts.name;
    summary["config"] = opts.config;
    summary["wall_seconds"] = wall;
    summary["note"] =
        "theorem constants are unknown; compare slopes and trends only, not prefactors";
    std::ofstream out(output_path(opts, ".summary.json"));
    if (!out) throw std::runtime_error("cannot write summary for " + opts.name);
    out << summary.dump(2) << '\n';
}

std::string name_or(const ExperimentOptions& opts, const char* fallback) {
    return opts.name.empty() ? fallback : opts.name;
}

struct PipelineOutput {
    RateExperimentResult result;
    std::vector<double> mean_deviation;  // per node, largest n; empty unless requested
};

PipelineOutput rate_pipeline(std::size_t d, double R, const DensityField& density,
                             const std::vector<std::uint64_t>& ns, std::size_t trials,
                             const Grid& grid, std::uint64_t seed, std::size_t workers,
                             std::optional<double> c_d, bool keep_deviation,
                             const std::string& tag) {
    check_ladder(ns);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (grid.dim() != d || density.dim() != d) {
        throw std::invalid_argument("grid, density and d disagree");
    }
    if (grid.box_side() != 1.0) throw std::invalid_argument("rate experiments use the unit box");
    const double h = grid.spacing();
    const auto consts = ChainScalingConstants::for_dimension(d, c_d);

    SolveSpec spec{&density, std::nullopt, 1e-12};
    if (R > 0.0) spec.mask = MaskedDomain(R, 1.0);
    const GridFunction u = solve_hj(spec, grid);

    std::vector<std::size_t> admissible;
    std::vector<double> x(d);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid.node(k, x);
        if (geometric_mean(x) > R + 2.0 * h) admissible.push_back(k);
    }
    if (admissible.empty()) throw std::invalid_argument("no admissible grid nodes");

    PipelineOutput out;
    if (density.rho_min() == density.rho_max()) {
        double err = 0.0;
        for (std::size_t k : admissible) {
            grid.node(k, x);
            err = std::max(err, std::abs(u.values[k] - exact_constant_solution(density.rho_max(), R, x)));
        }
        out.result.solver_error = err;
    }

    const std::size_t jobs = ns.size() * trials;
    std::vector<double> upper(jobs), lower(jobs);
    std::vector<std::uint64_t> seeds(jobs);
    std::vector<std::vector<double>> deviation(keep_deviation ? trials : 0);
    parallel_for(jobs, workers, [&](std::size_t job) {
        const std::size_t ni = job / trials;
        const std::size_t t = job % trials;
        const std::uint64_t n = ns[ni];
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = trial_seed(seed, t, tag + ":n=" + std::to_string(n));
        cfg.region = Region{d, 1.0, R > 0.0 ? std::optional<double>(R) : std::nullopt};
        seeds[job] = cfg.seed;
        const PointCloud cloud = sample_poisson(density, cfg);
        const GridFunction U = depth_on_grid(cloud, grid);
        const double scale = scaled_depth(1, static_cast<double>(n), consts);
        double up = 0.0;
        double lo = 0.0;
        for (std::size_t k : admissible) {
            const double diff = scale * U.values[k] - u.values[k];
            up = std::max(up, diff);
            lo = std::max(lo, -diff);
        }
        upper[job] = up;
        lower[job] = lo;
        if (keep_deviation && ni + 1 == ns.size()) {
            std::vector<double> dev(grid.size());
            for (std::size_t k = 0; k < grid.size(); ++k) dev[k] = u.values[k] - scale * U.values[k];
            deviation[t] = std::move(dev);
        }
    });

    std::vector<std::vector<double>> up_stats(ns.size()), lo_stats(ns.size());
    for (std::size_t job = 0; job < jobs; ++job) {
        const std::size_t ni = job / trials;
        const std::size_t t = job % trials;
        up_stats[ni].push_back(upper[job]);
        lo_stats[ni].push_back(lower[job]);
        out.result.upper_trials.push_back({t, seeds[job], ns[ni], upper[job]});
        out.result.lower_trials.push_back({t, seeds[job], ns[ni], lower[job]});
    }
    if (keep_deviation) {
        out.mean_deviation.assign(grid.size(), 0.0);
        for (const auto& dev : deviation) {
            for (std::size_t k = 0; k < grid.size(); ++k) out.mean_deviation[k] += dev[k];
        }
        for (auto& v : out.mean_deviation) v /= static_cast<double>(trials);
    }
    const double dd = static_cast<double>(d);
    const double theory_up = R > 0.0 ? -1.0 / (4.0 * dd) : -full_domain_upper_exponent(d);
    const double theory_lo = R > 0.0 ? -1.0 / (3.0 * dd) : -full_domain_lower_exponent(d);
    out.result.upper = summarize(ns, up_stats, theory_up);
    out.result.lower = summarize(ns, lo_stats, theory_lo);
    fit_means(out.result.upper, out.result.upper.means);
    fit_means(out.result.lower, out.result.lower.means);
    return out;
}

void write_rate_outputs(const ExperimentOptions& opts, const RateExperimentResult& r,
                        double wall, nlohmann::json extra) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.upper_trials.size(); ++i) {
        const auto& a = r.upper_trials[i];
        const auto& b = r.lower_trials[i];
        rows.push_back({std::to_string(a.n), std::to_string(a.trial_index), std::to_string(a.seed),
                        format_double(a.statistic), format_double(b.statistic)});
    }
    write_table(output_path(opts, ".csv"), {"n", "trial", "seed", "sup_un_minus_u", "sup_u_minus_un"},
                rows);
    extra["upper"] = to_json(r.upper);
    extra["lower"] = to_json(r.lower);
    if (r.solver_error >= 0.0) extra["solver_error"] = r.solver_error;
    write_summary(opts, std::move(extra), wall);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial, const std::string& tag) {
    return substream_seed(master, trial, tag);
}

CdEstimate estimate_cd(std::size_t d, std::uint64_t n, std::size_t trials, std::uint64_t seed,
                       const ExperimentOptions& opts) {
    if (d < 2) throw std::invalid_argument("estimate_cd: d must be >= 2");
    if (trials < 2) throw std::invalid_argument("estimate_cd: trials must be >= 2");
    if (n < 1) throw std::invalid_argument("estimate_cd: n must be >= 1");
    const auto t0 = Clock::now();
    const auto unit = DensityField::constant(d, 1.0);
    CdEstimate est;
    est.trials.resize(trials);
    parallel_for(trials, opts.workers, [&](std::size_t t) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = trial_seed(seed, t, "cd:n=" + std::to_string(n));
        cfg.region = Region{d, 1.0, std::nullopt};
        const auto cloud = sample_poisson(unit, cfg);
        const double stat = std::pow(static_cast<double>(n), -1.0 / static_cast<double>(d)) *
                            static_cast<double>(longest_chain(cloud));
        est.trials[t] = TrialResult{t, cfg.seed, n, stat};
    });
    std::vector<double> stats;
    for (const auto& tr : est.trials) stats.push_back(tr.statistic);
    const auto ms = mean_std(stats);
    est.estimate = ms.mean;
    est.ci_halfwidth = 1.96 * ms.std / std::sqrt(static_cast<double>(trials));

    if (opts.out_dir) {
        ExperimentOptions o = opts;
        o.name = name_or(opts, "cd");
        std::vector<std::vector<std::string>> rows;
        for (const auto& tr : est.trials) {
            rows.push_back({std::to_string(tr.n), std::to_string(tr.trial_index),
                            std::to_string(tr.seed), format_double(tr.statistic)});
        }
        write_table(output_path(o, ".csv"), {"n", "trial", "seed", "scaled_chain"}, rows);
        write_summary(o,
                      {{"d", d},
                       {"n", n},
                       {"trials", trials},
                       {"estimate", est.estimate},
                       {"ci_halfwidth", est.ci_halfwidth},
                       {"lower_bound", chain_constant_lower_bound(d)},
                       {"upper_bound", std::exp(1.0)}},
                      seconds_since(t0));
    }
    return est;
}

CellProblemResult cell_problem_experiment(std::size_t d, double rho0, const std::vector<double>& p,
                                          const std::vector<std::uint64_t>& ns, std::size_t trials,
                                          std::uint64_t seed, const ExperimentOptions& opts,
                                          std::optional<double> c_d) {
    check_ladder(ns);
    if (p.size() != d) throw std::invalid_argument("cell problem: p must have d entries");
    if (trials < 2) throw std::invalid_argument("cell problem: trials must be >= 2");
    const auto t0 = Clock::now();
    const Simplex S(Point(p), p);
    const double dd = static_cast<double>(d);
    if (dd * std::pow(S.measure(), 1.0 / dd) > 1.0 + 1e-12) {
        throw std::invalid_argument("cell problem: requires d |S|^{1/d} <= 1");
    }
    const auto consts = ChainScalingConstants::for_dimension(d, c_d);
    const double M = *std::max_element(p.begin(), p.end());
    const auto rho = DensityField::constant(d, rho0, M);

    CellProblemResult res;
    res.limit = dd * std::pow(rho0, 1.0 / dd) * std::pow(S.measure(), 1.0 / dd);
    const std::size_t jobs = ns.size() * trials;
    res.trials.resize(jobs);
    parallel_for(jobs, opts.workers, [&](std::size_t job) {
        const std::size_t ni = job / trials;
        const std::size_t t = job % trials;
        SampleConfig cfg;
        cfg.n = ns[ni];
        cfg.seed = trial_seed(seed, t, "cell:n=" + std::to_string(ns[ni]));
        cfg.region = Region{d, M, std::nullopt};
        const auto cloud = sample_poisson(rho, cfg);
        const auto len = longest_chain_in(cloud, in_simplex(S));
        res.trials[job] = TrialResult{t, cfg.seed, ns[ni],
                                      scaled_depth(len, static_cast<double>(ns[ni]), consts)};
    });
    std::vector<std::vector<double>> stats(ns.size());
    for (std::size_t job = 0; job < jobs; ++job) stats[job / trials].push_back(res.trials[job].statistic);
    const double theory = -1.0 / (2.0 * dd);
    res.spread = summarize(ns, stats, theory);
    res.bias = res.spread;
    std::vector<double> gaps;
    for (double m : res.spread.means) gaps.push_back(std::abs(m - res.limit));
    fit_means(res.bias, gaps);
    fit_means(res.spread, res.spread.stds);

    if (opts.out_dir) {
        ExperimentOptions o = opts;
        o.name = name_or(opts, "cell");
        std::vector<std::vector<std::string>> rows;
        for (const auto& tr : res.trials) {
            rows.push_back({std::to_string(tr.n), std::to_string(tr.trial_index),
                            std::to_string(tr.seed), format_double(tr.statistic)});
        }
        write_table(output_path(o, ".csv"), {"n", "trial", "seed", "scaled_chain"}, rows);
        write_summary(o,
                      {{"limit", res.limit},
                       {"bias_fit", to_json(res.bias)},
                       {"bias_values", gaps},
                       {"std_fit", to_json(res.spread)}},
                      seconds_since(t0));
    }
    return res;
}

RateExperimentResult rate_experiment(std::size_t d, double R, const DensityField& density,
                                     const std::vector<std::uint64_t>& ns, std::size_t trials,
                                     const Grid& grid, std::uint64_t seed,
                                     const ExperimentOptions& opts, std::optional<double> c_d) {
    if (!(R > 0.0 && R <= 0.5)) throw std::invalid_argument("rate experiment: R must be in (0, 1/2]");
    if (grid.spacing() > R / 16.0 + 1e-15) {
        throw std::invalid_argument("rate experiment: grid too coarse, need h <= R/16");
    }
    const auto t0 = Clock::now();
    auto out = rate_pipeline(d, R, density, ns, trials, grid, seed, opts.workers, c_d, false, "rates");
    if (opts.out_dir) {
        ExperimentOptions o = opts;
        o.name = name_or(opts, "rates");
        write_rate_outputs(o, out.result, seconds_since(t0),
                           {{"d", d}, {"R", R}, {"grid_m", grid.nodes_per_axis()}});
    }
    return out.result;
}

double full_domain_upper_exponent(std::size_t d) {
    const double x = static_cast<double>(d);
    return 1.0 / (2.0 * x * x * x + x * x + 5.0 * x + 1.0);
}

double full_domain_lower_exponent(std::size_t d) {
    const double x = static_cast<double>(d);
    return 1.0 / (2.0 * x * x * x - x * x + 3.0 * x + 1.0);
}

RateExperimentResult full_domain_rate_experiment(std::size_t d, const DensityField& density,
                                                 const std::vector<std::uint64_t>& ns,
                                                 std::size_t trials, const Grid& grid,
                                                 std::uint64_t seed, const ExperimentOptions& opts,
                                                 std::optional<double> c_d) {
    const auto t0 = Clock::now();
    auto out = rate_pipeline(d, 0.0, density, ns, trials, grid, seed, opts.workers, c_d,
                             opts.out_dir.has_value(), "rates-full");
    if (opts.out_dir) {
        ExperimentOptions o = opts;
        o.name = name_or(opts, "rates-full");
        GridFunction dev(grid);
        dev.values = out.mean_deviation;
        write_grid_csv(dev, output_path(o, ".deviation.csv"));
        write_rate_outputs(o, out.result, seconds_since(t0),
                           {{"d", d},
                            {"grid_m", grid.nodes_per_axis()},
                            {"theory_exponent_upper", full_domain_upper_exponent(d)},
                            {"theory_exponent_lower", full_domain_lower_exponent(d)}});
    }
    return out.result;
}

BoundarySupResult boundary_sup_experiment(std::size_t d, double R, double eps,
                                          const DensityField& density, std::uint64_t n,
                                          std::size_t trials, const Grid& grid,
                                          std::uint64_t seed, const ExperimentOptions& opts,
                                          std::optional<double> c_d) {
    if (!(R > 0.0 && R < 1.0)) throw std::invalid_argument("boundary sup: R must be in (0, 1)");
    if (!(eps > 0.0 && eps <= R)) throw std::invalid_argument("boundary sup: need 0 < eps <= R");
    if (trials < 1 || n < 1) throw std::invalid_argument("boundary sup: n and trials must be >= 1");
    if (grid.dim() != d || density.dim() != d) throw std::invalid_argument("boundary sup: dimension mismatch");
    const auto t0 = Clock::now();
    const auto consts = ChainScalingConstants::for_dimension(d, c_d);
    const double dd = static_cast<double>(d);

    std::vector<std::size_t> tube;
    std::vector<double> x(d);
    BoundarySupResult res;
    res.pde_bound = dd * std::pow(density.rho_max(), 1.0 / dd) * eps;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid.node(k, x);
        const double g = geometric_mean(x);
        if (g > R && g <= R + eps) {
            tube.push_back(k);
            res.pde_sup = std::max(res.pde_sup, exact_constant_solution(density.rho_max(), R, x));
        }
    }
    if (tube.empty()) throw std::invalid_argument("boundary sup: no grid nodes in the tube");

    res.trials.resize(trials);
    parallel_for(trials, opts.workers, [&](std::size_t t) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = trial_seed(seed, t, "boundary:eps=" + format_double(eps));
        cfg.region = Region{d, grid.box_side(), R};
        const auto cloud = sample_poisson(density, cfg);
        const auto U = depth_on_grid(cloud, grid);
        double best = 0.0;
        for (std::size_t k : tube) best = std::max(best, U.values[k]);
        res.trials[t] = TrialResult{t, cfg.seed, n,
                                    scaled_depth(static_cast<std::size_t>(best), static_cast<double>(n), consts)};
    });
    std::vector<double> stats;
    for (const auto& tr : res.trials) stats.push_back(tr.statistic);
    const auto ms = mean_std(stats);
    res.mean = ms.mean;
    res.std = ms.std;

    if (opts.out_dir) {
        ExperimentOptions o = opts;
        o.name = name_or(opts, "boundary");
        std::vector<std::vector<std::string>> rows;
        for (const auto& tr : res.trials) {
            rows.push_back({std::to_string(tr.n), std::to_string(tr.trial_index),
                            std::to_string(tr.seed), format_double(tr.statistic)});
        }
        write_table(output_path(o, ".csv"), {"n", "trial", "seed", "tube_sup"}, rows);
        write_summary(o,
                      {{"R", R},
                       {"eps", eps},
                       {"mean", res.mean},
                       {"std", res.std},
                       {"mean_over_eps", res.mean / eps},
                       {"pde_sup", res.pde_sup},
                       {"pde_bound", res.pde_bound}},
                      seconds_since(t0));
    }
    return res;
}

void write_blowup_outputs(const BlowupFit& fit, const ExperimentOptions& opts, double wall_seconds) {
    if (!opts.out_dir) return;
    ExperimentOptions o = opts;
    o.name = name_or(opts, "semiconvexity");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
        rows.push_back({format_double(fit.radii[i]), format_double(fit.constants[i]),
                        std::to_string(fit.samples[i])});
    }
    write_table(output_path(o, ".csv"), {"R", "constant", "samples"}, rows);
    write_summary(o, {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}},
                  wall_seconds);
}

LipschitzScaling lipschitz_scaling(const DensityField& density, const std::vector<double>& radii,
                                   const Grid& grid, std::size_t workers) {
    if (radii.size() < 3) throw std::invalid_argument("lipschitz scaling: need at least 3 radii");
    LipschitzScaling res;
    res.radii = radii;
    res.constants.assign(radii.size(), 0.0);
    const double h = grid.spacing();
    parallel_for(radii.size(), workers, [&](std::size_t i) {
        SolveSpec spec{&density, MaskedDomain(radii[i], grid.box_side()), 1e-12};
        const auto u = solve_hj(spec, grid);
        const double margin = radii[i] + 2.0 * h;
        res.constants[i] = lipschitz_constant(
            u, [margin](std::span<const double> x) { return geometric_mean(x) > margin; });
    });
    const auto fit = fit_loglog(res.radii, res.constants);
    res.slope = fit.slope;
    res.r2 = fit.r2;
    return res;
}

}  // namespace paretolab
